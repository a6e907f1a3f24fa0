#include <chrono>
#include <cstddef>
#include <limits>
#include <vector>

#include "gibbssat/solver.hpp"

namespace gibbssat {

namespace {

constexpr int8_t kUnassigned = -1;
constexpr uint32_t kNoVar = std::numeric_limits<uint32_t>::max();

inline uint32_t enc(const Literal& lit) {
  return 2 * lit.var + (lit.negated ? 1 : 0);
}

struct Pending {
  uint32_t var;
  int8_t value;
  bool pure;  // pure-literal suggestions are skippable, units are not
};

struct Dpll {
  // clause storage (CSR over encoded literals)
  std::vector<uint32_t> lits;
  std::vector<uint32_t> clause_begin;
  std::vector<uint32_t> clause_len;
  // occurrence lists per encoded literal (CSR)
  std::vector<uint32_t> occ;
  std::vector<uint32_t> occ_begin;

  uint32_t n_vars = 0;
  uint32_t n_clauses = 0;

  std::vector<int8_t> value;       // per variable
  std::vector<uint16_t> n_true;    // satisfied literals per clause
  std::vector<uint16_t> n_false;   // falsified literals per clause
  std::vector<uint32_t> active_occ;  // unsatisfied clauses containing literal
  uint32_t n_active = 0;           // clauses with no true literal
  std::vector<uint32_t> trail;
  std::vector<Pending> queue;
  size_t queue_head = 0;
  WorkStats stats;

  explicit Dpll(const CnfFormula& f) {
    n_vars = f.n_vars();
    n_clauses = f.num_clauses();
    clause_begin.reserve(n_clauses + 1);
    clause_begin.push_back(0);
    clause_len.reserve(n_clauses);
    for (const Clause& c : f.clauses()) {
      for (const Literal& lit : c.literals()) lits.push_back(enc(lit));
      clause_begin.push_back(static_cast<uint32_t>(lits.size()));
      clause_len.push_back(c.size());
    }
    occ_begin.assign(2 * n_vars + 1, 0);
    for (uint32_t l : lits) ++occ_begin[l + 1];
    for (uint32_t i = 0; i < 2 * n_vars; ++i) occ_begin[i + 1] += occ_begin[i];
    occ.resize(lits.size());
    {
      std::vector<uint32_t> fill(occ_begin.begin(), occ_begin.end() - 1);
      for (uint32_t c = 0; c < n_clauses; ++c)
        for (uint32_t i = clause_begin[c]; i < clause_begin[c + 1]; ++i)
          occ[fill[lits[i]]++] = c;
    }
    value.assign(n_vars, kUnassigned);
    n_true.assign(n_clauses, 0);
    n_false.assign(n_clauses, 0);
    active_occ.assign(2 * n_vars, 0);
    for (uint32_t l = 0; l < 2 * n_vars; ++l)
      active_occ[l] = occ_begin[l + 1] - occ_begin[l];
    n_active = n_clauses;
  }

  bool lit_true(uint32_t l) const { return value[l >> 1] == int8_t(1 - (l & 1)); }

  // Applies the assignment and updates clause counters; enqueues implied
  // units and pure-literal candidates. Returns true on a falsified clause.
  // Counter updates always run to completion so undo stays symmetric.
  bool assign(uint32_t var, int8_t val) {
    value[var] = val;
    trail.push_back(var);
    uint32_t true_lit = 2 * var + (val ? 0 : 1);
    uint32_t false_lit = true_lit ^ 1;
    bool conflict = false;

    for (uint32_t i = occ_begin[true_lit]; i < occ_begin[true_lit + 1]; ++i) {
      uint32_t c = occ[i];
      if (n_true[c]++ == 0) {
        --n_active;
        for (uint32_t j = clause_begin[c]; j < clause_begin[c + 1]; ++j) {
          uint32_t l = lits[j];
          if (--active_occ[l] == 0) {
            uint32_t opposite = l ^ 1;
            uint32_t v = l >> 1;
            if (value[v] == kUnassigned && active_occ[opposite] > 0)
              queue.push_back({v, int8_t((opposite & 1) ? 0 : 1), true});
          }
        }
      }
    }
    for (uint32_t i = occ_begin[false_lit]; i < occ_begin[false_lit + 1]; ++i) {
      uint32_t c = occ[i];
      ++n_false[c];
      if (n_true[c] == 0) {
        uint32_t remaining = clause_len[c] - n_false[c];
        if (remaining == 0) {
          ++stats.conflicts;
          conflict = true;
        } else if (remaining == 1) {
          for (uint32_t j = clause_begin[c]; j < clause_begin[c + 1]; ++j) {
            uint32_t l = lits[j];
            if (value[l >> 1] == kUnassigned) {
              queue.push_back({l >> 1, int8_t((l & 1) ? 0 : 1), false});
              break;
            }
          }
        }
      }
    }
    return conflict;
  }

  void unassign(uint32_t var) {
    int8_t val = value[var];
    uint32_t true_lit = 2 * var + (val ? 0 : 1);
    uint32_t false_lit = true_lit ^ 1;
    for (uint32_t i = occ_begin[true_lit]; i < occ_begin[true_lit + 1]; ++i) {
      uint32_t c = occ[i];
      if (--n_true[c] == 0) {
        ++n_active;
        for (uint32_t j = clause_begin[c]; j < clause_begin[c + 1]; ++j)
          ++active_occ[lits[j]];
      }
    }
    for (uint32_t i = occ_begin[false_lit]; i < occ_begin[false_lit + 1]; ++i)
      --n_false[occ[i]];
    value[var] = kUnassigned;
  }

  void clear_queue() {
    queue.clear();
    queue_head = 0;
  }

  // Runs the pending queue to fixpoint. Returns true on conflict.
  bool propagate() {
    while (queue_head < queue.size()) {
      Pending p = queue[queue_head++];
      if (value[p.var] != kUnassigned) continue;  // satisfied or superseded
      ++stats.propagations;
      if (assign(p.var, p.value)) {
        clear_queue();
        return true;
      }
    }
    clear_queue();
    return false;
  }

  // Lowest-index unassigned variable in the first unresolved clause of
  // minimal current width (clause order is the input order). Called only at
  // propagation fixpoints, where every unresolved clause has width >= 2, so
  // finding a width-2 clause ends the scan.
  uint32_t pick_branch_var() const {
    uint32_t best_clause = 0;
    uint32_t best_width = std::numeric_limits<uint32_t>::max();
    for (uint32_t c = 0; c < n_clauses; ++c) {
      if (n_true[c] > 0) continue;
      uint32_t width = clause_len[c] - n_false[c];
      if (width < best_width) {
        best_width = width;
        best_clause = c;
        if (width <= 2) break;
      }
    }
    uint32_t best_var = kNoVar;
    for (uint32_t j = clause_begin[best_clause];
         j < clause_begin[best_clause + 1]; ++j) {
      uint32_t v = lits[j] >> 1;
      if (value[v] == kUnassigned && v < best_var) best_var = v;
    }
    return best_var;
  }

  void backtrack_to(size_t trail_pos) {
    while (trail.size() > trail_pos) {
      uint32_t v = trail.back();
      trail.pop_back();
      unassign(v);
    }
    clear_queue();
  }
};

struct BranchFrame {
  size_t trail_pos;
  uint32_t var;
  bool flipped;
};

}  // namespace

SatResult solve_dpll(const CnfFormula& formula) {
  auto t0 = std::chrono::steady_clock::now();
  Dpll s(formula);
  SatResult result;

  auto finish = [&](bool sat) {
    result.satisfiable = sat;
    if (sat) {
      Assignment witness(s.n_vars, false);
      for (uint32_t v = 0; v < s.n_vars; ++v)
        if (s.value[v] == 1) witness.set(v, true);
      result.witness = std::move(witness);
    }
    result.work = s.stats;
    result.work.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return result;
  };

  // Root-level units and pure literals.
  for (uint32_t c = 0; c < s.n_clauses; ++c)
    if (s.clause_len[c] == 1) {
      uint32_t l = s.lits[s.clause_begin[c]];
      s.queue.push_back({l >> 1, int8_t((l & 1) ? 0 : 1), false});
    }
  for (uint32_t v = 0; v < s.n_vars; ++v) {
    uint32_t pos_occ = s.active_occ[2 * v];
    uint32_t neg_occ = s.active_occ[2 * v + 1];
    if (pos_occ > 0 && neg_occ == 0)
      s.queue.push_back({v, 1, true});
    else if (neg_occ > 0 && pos_occ == 0)
      s.queue.push_back({v, 0, true});
  }
  if (s.propagate()) return finish(false);

  std::vector<BranchFrame> frames;
  for (;;) {
    if (s.n_active == 0) return finish(true);

    uint32_t var = s.pick_branch_var();
    ++s.stats.decisions;
    frames.push_back({s.trail.size(), var, false});
    bool conflict = s.assign(var, 1);
    if (conflict)
      s.clear_queue();
    else
      conflict = s.propagate();

    while (conflict) {
      while (!frames.empty() && frames.back().flipped) frames.pop_back();
      if (frames.empty()) return finish(false);
      BranchFrame& frame = frames.back();
      s.backtrack_to(frame.trail_pos);
      frame.flipped = true;
      ++s.stats.propagations;  // the forced second branch
      conflict = s.assign(frame.var, 0);
      if (conflict)
        s.clear_queue();
      else
        conflict = s.propagate();
    }
  }
}

}  // namespace gibbssat
