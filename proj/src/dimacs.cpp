#include "gibbssat/dimacs.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace gibbssat {

namespace {

// Minimal tokenizer: skips whitespace and 'c'/'%' comment lines, returns
// whitespace-delimited tokens.
class Tokens {
 public:
  explicit Tokens(std::string_view text) : text_(text) {}

  std::optional<std::string_view> next() {
    while (pos_ < text_.size()) {
      char ch = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(ch))) {
        ++pos_;
        continue;
      }
      if ((ch == 'c' || ch == '%') && at_line_start_token()) {
        skip_line();
        continue;
      }
      size_t start = pos_;
      while (pos_ < text_.size() &&
             !std::isspace(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      return text_.substr(start, pos_ - start);
    }
    return std::nullopt;
  }

 private:
  bool at_line_start_token() const {
    size_t i = pos_;
    while (i > 0 && (text_[i - 1] == ' ' || text_[i - 1] == '\t')) --i;
    return i == 0 || text_[i - 1] == '\n' || text_[i - 1] == '\r';
  }

  void skip_line() {
    while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
  }

  std::string_view text_;
  size_t pos_ = 0;
};

long long parse_int(std::string_view token, const char* what) {
  size_t i = 0;
  bool negative = false;
  if (i < token.size() && (token[i] == '-' || token[i] == '+')) {
    negative = token[i] == '-';
    ++i;
  }
  if (i == token.size()) throw DimacsError(std::string("malformed ") + what);
  long long value = 0;
  for (; i < token.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(token[i])))
      throw DimacsError(std::string("malformed ") + what + " '" +
                        std::string(token) + "'");
    value = value * 10 + (token[i] - '0');
    if (value > (1ll << 40))
      throw DimacsError(std::string(what) + " out of range");
  }
  return negative ? -value : value;
}

}  // namespace

CnfFormula parse_dimacs(std::string_view text, std::optional<uint32_t> strict_k) {
  Tokens tokens(text);

  auto tok = tokens.next();
  if (!tok || *tok != "p") throw DimacsError("malformed header: expected 'p cnf N M'");
  tok = tokens.next();
  if (!tok || *tok != "cnf") throw DimacsError("malformed header: expected 'p cnf N M'");
  tok = tokens.next();
  if (!tok) throw DimacsError("malformed header: missing variable count");
  long long n_vars = parse_int(*tok, "variable count");
  tok = tokens.next();
  if (!tok) throw DimacsError("malformed header: missing clause count");
  long long n_clauses = parse_int(*tok, "clause count");
  if (n_vars <= 0 || n_clauses < 0)
    throw DimacsError("malformed header: counts must be positive");
  if (n_vars > 0x7fffffff || n_clauses > 0x7fffffff)
    throw DimacsError("malformed header: counts out of range");

  CnfFormula formula(static_cast<uint32_t>(n_vars));
  std::vector<Literal> lits;
  std::optional<uint32_t> width;

  for (long long c = 0; c < n_clauses; ++c) {
    lits.clear();
    for (;;) {
      tok = tokens.next();
      if (!tok) throw DimacsError("unexpected end of input inside clause");
      long long lit = parse_int(*tok, "literal");
      if (lit == 0) break;
      long long var = lit < 0 ? -lit : lit;
      if (var > n_vars)
        throw DimacsError("literal " + std::string(*tok) +
                          " out of range for " + std::to_string(n_vars) +
                          " variables");
      lits.push_back({static_cast<uint32_t>(var - 1), lit < 0});
    }
    if (lits.empty()) throw DimacsError("empty clause");
    if (strict_k && lits.size() != *strict_k)
      throw DimacsError("clause width " + std::to_string(lits.size()) +
                        " does not match required width " +
                        std::to_string(*strict_k));
    if (!width)
      width = static_cast<uint32_t>(lits.size());
    else if (lits.size() != *width)
      throw DimacsError("mixed clause widths are unsupported");
    try {
      formula.add_clause(Clause(lits));
    } catch (const std::invalid_argument& err) {
      throw DimacsError(err.what());
    }
  }

  if (tokens.next()) throw DimacsError("trailing tokens after last clause");
  return formula;
}

CnfFormula parse_dimacs_file(const std::string& path,
                             std::optional<uint32_t> strict_k) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DimacsError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_dimacs(buffer.str(), strict_k);
}

std::string write_dimacs(const CnfFormula& formula) {
  std::string out = "p cnf " + std::to_string(formula.n_vars()) + ' ' +
                    std::to_string(formula.num_clauses()) + '\n';
  for (const Clause& clause : formula.clauses()) {
    for (const Literal& lit : clause.literals()) {
      if (lit.negated) out += '-';
      out += std::to_string(lit.var + 1);
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

void write_dimacs_file(const CnfFormula& formula, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DimacsError("cannot open '" + path + "' for writing");
  out << write_dimacs(formula);
  if (!out) throw DimacsError("write to '" + path + "' failed");
}

}  // namespace gibbssat
