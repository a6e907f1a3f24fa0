#include <chrono>
#include <limits>
#include <vector>

#include "gibbssat/solver.hpp"

namespace gibbssat {

namespace {

constexpr uint32_t kUnvisited = std::numeric_limits<uint32_t>::max();

// literal node: 2*var for x, 2*var+1 for !x; complement is id^1.
inline uint32_t node_of(const Literal& lit) {
  return 2 * lit.var + (lit.negated ? 1 : 0);
}

struct Frame {
  uint32_t node;
  uint32_t cursor;  // next edge offset in the CSR row
};

}  // namespace

SatResult solve_2sat(const CnfFormula& formula) {
  if (formula.num_clauses() > 0 && formula.k() != 2)
    throw std::invalid_argument("solve_2sat requires clause width 2, got " +
                                std::to_string(formula.k()));

  auto t0 = std::chrono::steady_clock::now();
  SatResult result;

  const uint32_t n_nodes = 2 * formula.n_vars();
  const uint32_t n_edges = 2 * formula.num_clauses();

  // CSR adjacency, filled in clause order so traversal is deterministic.
  std::vector<uint32_t> row(n_nodes + 1, 0);
  for (const Clause& c : formula.clauses()) {
    ++row[(node_of(c[0]) ^ 1) + 1];
    ++row[(node_of(c[1]) ^ 1) + 1];
  }
  for (uint32_t i = 0; i < n_nodes; ++i) row[i + 1] += row[i];
  std::vector<uint32_t> edges(n_edges);
  {
    std::vector<uint32_t> fill(row.begin(), row.end() - 1);
    for (const Clause& c : formula.clauses()) {
      uint32_t a = node_of(c[0]);
      uint32_t b = node_of(c[1]);
      edges[fill[a ^ 1]++] = b;
      edges[fill[b ^ 1]++] = a;
    }
  }

  std::vector<uint32_t> index(n_nodes, kUnvisited);
  std::vector<uint32_t> lowlink(n_nodes, 0);
  std::vector<uint32_t> comp(n_nodes, kUnvisited);
  std::vector<uint8_t> on_stack(n_nodes, 0);
  std::vector<uint32_t> scc_stack;
  std::vector<Frame> call;
  uint32_t next_index = 0;
  uint32_t next_comp = 0;
  bool contradiction = false;

  for (uint32_t root = 0; root < n_nodes && !contradiction; ++root) {
    if (index[root] != kUnvisited) continue;
    ++result.work.decisions;
    index[root] = lowlink[root] = next_index++;
    on_stack[root] = 1;
    scc_stack.push_back(root);
    call.push_back({root, row[root]});

    while (!call.empty() && !contradiction) {
      Frame& frame = call.back();
      uint32_t u = frame.node;
      if (frame.cursor < row[u + 1]) {
        uint32_t v = edges[frame.cursor++];
        ++result.work.propagations;
        if (index[v] == kUnvisited) {
          index[v] = lowlink[v] = next_index++;
          on_stack[v] = 1;
          scc_stack.push_back(v);
          call.push_back({v, row[v]});
        } else if (on_stack[v]) {
          if (index[v] < lowlink[u]) lowlink[u] = index[v];
        }
        continue;
      }
      if (lowlink[u] == index[u]) {
        uint32_t cid = next_comp++;
        for (;;) {
          uint32_t w = scc_stack.back();
          scc_stack.pop_back();
          on_stack[w] = 0;
          comp[w] = cid;
          if (comp[w ^ 1] == cid) {
            // variable and its negation in one component: abort
            contradiction = true;
            ++result.work.conflicts;
            break;
          }
          if (w == u) break;
        }
      }
      call.pop_back();
      if (!call.empty() && lowlink[u] < lowlink[call.back().node])
        lowlink[call.back().node] = lowlink[u];
    }
  }

  result.satisfiable = !contradiction;
  if (result.satisfiable) {
    // Components are numbered in completion order, i.e. reverse topological
    // order of the condensation: set x true iff comp(x) completed earlier
    // than comp(!x).
    Assignment witness(formula.n_vars());
    for (uint32_t v = 0; v < formula.n_vars(); ++v)
      witness.set(v, comp[2 * v] < comp[2 * v + 1]);
    result.witness = std::move(witness);
  }
  result.work.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return result;
}

}  // namespace gibbssat
