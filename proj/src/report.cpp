#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gibbssat/experiments.hpp"

namespace gibbssat {

namespace {

std::string fmt(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string fmt_beta(double beta) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", beta);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  return out;
}

double to_double(const std::string& s) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw std::invalid_argument("bad CSV number '" + s + "'");
  return v;
}

void write_text_file(const std::string& content, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string csv_stem(const std::string& csv_name) {
  if (csv_name.size() > 4 && csv_name.substr(csv_name.size() - 4) == ".csv")
    return csv_name.substr(0, csv_name.size() - 4);
  return csv_name;
}

}  // namespace

std::string points_csv(const std::vector<SweepPoint>& points, SweepMode mode,
                       const std::vector<double>& betas) {
  std::string out = "alpha,m_clauses,n_instances";
  if (mode == SweepMode::satisfiability) {
    out += ",sat_fraction,work_mean,work_median\n";
  } else {
    for (double beta : betas) {
      std::string b = fmt_beta(beta);
      out += ",p_mean_beta" + b + ",p_std_beta" + b + ",p_stderr_beta" + b;
    }
    out += ",beta_star_mean,beta_star_std\n";
  }

  for (const SweepPoint& p : points) {
    out += fmt(p.alpha) + ',' + std::to_string(p.m_clauses) + ',' +
           std::to_string(p.n_instances);
    if (mode == SweepMode::satisfiability) {
      out += ',' + fmt(p.sat_fraction) + ',' + fmt(p.work_mean) + ',' +
             fmt(p.work_median);
    } else {
      for (size_t b = 0; b < betas.size(); ++b)
        out += ',' + fmt(p.p_mean[b]) + ',' + fmt(p.p_std[b]) + ',' +
               fmt(p.p_stderr[b]);
      out += ',' + fmt(p.beta_star_mean) + ',' + fmt(p.beta_star_std);
    }
    out += '\n';
  }
  return out;
}

void write_points_csv(const std::vector<SweepPoint>& points, SweepMode mode,
                      const std::vector<double>& betas,
                      const std::string& path) {
  write_text_file(points_csv(points, mode, betas), path);
}

ParsedCsv parse_points_csv(const std::string& content) {
  std::istringstream in(content);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty CSV");
  std::vector<std::string> header = split(line, ',');
  if (header.size() < 4 || header[0] != "alpha")
    throw std::invalid_argument("unrecognized CSV header");

  ParsedCsv parsed;
  if (header[3] == "sat_fraction") {
    parsed.mode = SweepMode::satisfiability;
    if (header.size() != 6)
      throw std::invalid_argument("satisfiability CSV needs 6 columns");
  } else {
    parsed.mode = SweepMode::gibbs;
    const std::string prefix = "p_mean_beta";
    for (const std::string& name : header)
      if (name.rfind(prefix, 0) == 0)
        parsed.betas.push_back(to_double(name.substr(prefix.size())));
    if (parsed.betas.empty() ||
        header.size() != 3 + 3 * parsed.betas.size() + 2)
      throw std::invalid_argument("unrecognized gibbs CSV header");
  }

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields = split(line, ',');
    if (fields.size() != header.size())
      throw std::invalid_argument("CSV row width does not match header");
    SweepPoint p;
    p.alpha = to_double(fields[0]);
    p.m_clauses = static_cast<uint32_t>(std::stoul(fields[1]));
    p.n_instances = static_cast<uint32_t>(std::stoul(fields[2]));
    if (parsed.mode == SweepMode::satisfiability) {
      p.sat_fraction = to_double(fields[3]);
      p.work_mean = to_double(fields[4]);
      p.work_median = to_double(fields[5]);
    } else {
      size_t col = 3;
      for (size_t b = 0; b < parsed.betas.size(); ++b) {
        p.p_mean.push_back(to_double(fields[col++]));
        p.p_std.push_back(to_double(fields[col++]));
        p.p_stderr.push_back(to_double(fields[col++]));
      }
      p.beta_star_mean = to_double(fields[col++]);
      p.beta_star_std = to_double(fields[col++]);
    }
    parsed.points.push_back(std::move(p));
  }
  return parsed;
}

ParsedCsv parse_points_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_points_csv(buffer.str());
}

std::string window_csv(const ScalingWindow& window) {
  std::string out =
      "delta,alpha_minus,alpha_plus,width,minus_clamped,plus_clamped\n";
  out += fmt(window.delta) + ',' + fmt(window.alpha_minus) + ',' +
         fmt(window.alpha_plus) + ',' + fmt(window.width()) + ',' +
         (window.minus_clamped ? "1" : "0") + ',' +
         (window.plus_clamped ? "1" : "0") + '\n';
  return out;
}

void write_window_csv(const ScalingWindow& window, const std::string& path) {
  write_text_file(window_csv(window), path);
}

std::string plot_script(SweepMode mode, const std::vector<double>& betas,
                        const std::string& csv_name) {
  const std::string stem = csv_stem(csv_name);
  std::string s;
  s += "# gnuplot script generated by gibbssat; run it from the directory\n";
  s += "# containing " + csv_name + ":  gnuplot " + stem + ".gp\n";
  s += "set datafile separator ','\n";

  if (mode == SweepMode::satisfiability) {
    s += "set terminal pngcairo size 960,600\n";
    s += "set output '" + stem + ".png'\n";
    s += "set xlabel 'clause density'\n";
    s += "set ylabel 'fraction satisfiable'\n";
    s += "set y2label 'median work (decisions + propagations)'\n";
    s += "set ytics nomirror\n";
    s += "set y2tics\n";
    s += "set yrange [0:1.05]\n";
    s += "set key bottom left\n";
    s += "plot '" + csv_name +
         "' every ::1 using 1:4 with linespoints pt 7 lw 2 "
         "title 'fraction satisfiable', \\\n";
    s += "     '' every ::1 using 1:6 axes x1y2 with linespoints pt 5 lw 2 "
         "title 'median work'\n";
    return s;
  }

  const size_t nb = betas.size();
  s += "set terminal pngcairo size 960,900\n";
  s += "set output '" + stem + ".png'\n";
  s += "set multiplot layout 2,1\n";
  s += "set xlabel 'clause density'\n";
  s += "set ylabel 'ground-state occupancy p'\n";
  s += "set yrange [0:1.05]\n";
  s += "set key bottom left\n";
  s += "plot";
  for (size_t b = 0; b < nb; ++b) {
    size_t mean_col = 4 + 3 * b;
    if (b > 0) s += ",";
    s += " '" + csv_name + "' every ::1 using 1:" + std::to_string(mean_col) +
         ":" + std::to_string(mean_col + 1) +
         " with yerrorlines title 'beta = " + fmt_beta(betas[b]) + "'";
    s += " \\\n    ";
  }
  s += "\n";
  size_t bstar_col = 4 + 3 * nb;
  s += "set ylabel 'minimal beta for p > threshold'\n";
  s += "set yrange [*:*]\n";
  s += "set key top left\n";
  s += "plot '" + csv_name + "' every ::1 using 1:" + std::to_string(bstar_col) +
       ":" + std::to_string(bstar_col + 1) +
       " with yerrorlines title 'beta*'\n";
  s += "unset multiplot\n";
  return s;
}

void write_plot_script(SweepMode mode, const std::vector<double>& betas,
                       const std::string& csv_name, const std::string& path) {
  write_text_file(plot_script(mode, betas, csv_name), path);
}

}  // namespace gibbssat
