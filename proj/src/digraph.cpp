#include "icbound/digraph.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "icbound/minrank.hpp"

namespace icbound {

Digraph::Digraph(int n_, std::set<std::pair<int, int>> arcs_) : n(n_), arcs(std::move(arcs_)) {
    for (const auto& [u, v] : arcs) {
        if (u == v) throw PreconditionViolated("self-loop");
        if (u < 1 || u > n || v < 1 || v > n)
            throw PreconditionViolated("arc endpoint out of range");
    }
}

int Digraph::out_degree(int u) const {
    int d = 0;
    for (int v = 1; v <= n; ++v)
        if (has_arc(u, v)) ++d;
    return d;
}

bool Digraph::is_graph() const {
    for (const auto& [u, v] : arcs)
        if (!has_arc(v, u)) return false;
    return true;
}

Hypergraph::Hypergraph(int n_, std::vector<std::pair<int, std::vector<int>>> arcs)
    : n(n_), hyperarcs(std::move(arcs)) {
    for (auto& [tail, head] : hyperarcs) {
        if (tail < 1 || tail > n) throw PreconditionViolated("tail out of range");
        std::sort(head.begin(), head.end());
        head.erase(std::unique(head.begin(), head.end()), head.end());
        for (int h : head) {
            if (h < 1 || h > n) throw PreconditionViolated("head vertex out of range");
            if (h == tail) throw PreconditionViolated("tail contained in head");
        }
    }
}

namespace {

std::vector<std::uint32_t> out_masks(const Digraph& g) {
    std::vector<std::uint32_t> out(g.n + 1, 0);
    for (const auto& [u, v] : g.arcs) out[u] |= 1u << (v - 1);
    return out;
}

// Any directed circuit (2-circuits count) within the induced vertex mask.
bool has_circuit_mask(const std::vector<std::uint32_t>& out, int n, std::uint32_t mask) {
    std::vector<int> color(n + 1, 0);  // 0 = white, 1 = on stack, 2 = done
    std::vector<int> stack, next_arc(n + 1, 0);
    for (int s = 1; s <= n; ++s) {
        if (!(mask >> (s - 1) & 1) || color[s] != 0) continue;
        stack = {s};
        color[s] = 1;
        next_arc[s] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            bool advanced = false;
            for (int& v = next_arc[u]; v <= n; ++v) {
                if (!(out[u] >> (v - 1) & 1) || !(mask >> (v - 1) & 1)) continue;
                if (color[v] == 1) return true;
                if (color[v] == 0) {
                    color[v] = 1;
                    next_arc[v] = 1;
                    stack.push_back(v);
                    advanced = true;
                    ++v;
                    break;
                }
            }
            if (!advanced && stack.back() == u) {
                color[u] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}

// Enumerates induced (chordless) circuits whose minimum vertex is `start`,
// restricted to `mask`, in a canonical DFS order.
void induced_circuits_from(const std::vector<std::uint32_t>& out, int n, std::uint32_t mask,
                           int start, std::vector<int>& path,
                           const std::function<bool(const std::vector<int>&)>& emit,
                           bool& stop) {
    if (stop) return;
    int tip = path.back();
    for (int w = start + 1; w <= n; ++w) {
        if (stop) return;
        if (!(mask >> (w - 1) & 1) || !(out[tip] >> (w - 1) & 1)) continue;
        bool chord = false;
        for (size_t i = 0; i + 1 < path.size() && !chord; ++i)
            if (out[path[i]] >> (w - 1) & 1) chord = true;  // second arc into w
        for (size_t i = 1; i < path.size() && !chord; ++i)
            if (out[w] >> (path[i] - 1) & 1) chord = true;  // back arc into the middle
        if (std::find(path.begin(), path.end(), w) != path.end()) chord = true;
        if (chord) continue;
        path.push_back(w);
        if (out[w] >> (start - 1) & 1) {
            if (emit(path)) stop = true;
        } else {
            induced_circuits_from(out, n, mask, start, path, emit, stop);
        }
        path.pop_back();
    }
}

void for_each_induced_circuit(const Digraph& g, std::uint32_t mask,
                              const std::function<bool(const std::vector<int>&)>& emit) {
    auto out = out_masks(g);
    bool stop = false;
    for (int v = 1; v <= g.n && !stop; ++v) {
        if (!(mask >> (v - 1) & 1)) continue;
        // 2-circuits through v first, then longer ones
        std::vector<int> path = {v};
        induced_circuits_from(out, g.n, mask, v, path, emit, stop);
    }
}

std::uint32_t full_mask(int n) { return n >= 32 ? 0xffffffffu : (1u << n) - 1; }

// Undirected cycle existence (>= 3 vertices) for the graph case: a simple
// DFS that never walks back along the edge it arrived by.
bool has_undirected_cycle(const Digraph& g, std::uint32_t mask) {
    std::vector<int> seen(g.n + 1, 0);
    for (int s = 1; s <= g.n; ++s) {
        if (!(mask >> (s - 1) & 1) || seen[s]) continue;
        std::vector<std::pair<int, int>> stack = {{s, 0}};  // (vertex, parent)
        seen[s] = 1;
        while (!stack.empty()) {
            auto [u, parent] = stack.back();
            stack.pop_back();
            bool skipped_parent = false;
            for (int v = 1; v <= g.n; ++v) {
                if (!(mask >> (v - 1) & 1) || !g.has_arc(u, v)) continue;
                if (v == parent && !skipped_parent) {
                    skipped_parent = true;  // one reciprocal pair is the tree edge
                    continue;
                }
                if (seen[v]) return true;
                seen[v] = 1;
                stack.push_back({v, u});
            }
        }
    }
    return false;
}

// Chordless undirected cycles (>= 3 vertices) whose minimum vertex is the
// first path entry; emits each once (second vertex below the last one).
void undirected_chordless_from(const Digraph& g, std::uint32_t mask,
                               std::vector<int>& path,
                               const std::function<bool(const std::vector<int>&)>& emit,
                               bool& stop) {
    if (stop) return;
    int start = path.front(), tip = path.back();
    size_t j = path.size();
    for (int w = start + 1; w <= g.n; ++w) {
        if (stop) return;
        if (!(mask >> (w - 1) & 1) || !g.has_arc(tip, w)) continue;
        if (std::find(path.begin(), path.end(), w) != path.end()) continue;
        bool mid_chord = false;
        for (size_t i = 1; i + 1 < j && !mid_chord; ++i)
            if (g.has_arc(path[i], w)) mid_chord = true;
        if (mid_chord) continue;
        if (j >= 2 && g.has_arc(start, w)) {
            if (path[1] < w) {
                path.push_back(w);
                if (emit(path)) stop = true;
                path.pop_back();
            }
            continue;  // a longer cycle through w would contain the closing chord
        }
        path.push_back(w);
        undirected_chordless_from(g, mask, path, emit, stop);
        path.pop_back();
    }
}

}  // namespace

std::optional<std::vector<int>> find_circuit(const Digraph& g) {
    std::optional<std::vector<int>> found;
    for_each_induced_circuit(g, full_mask(g.n), [&](const std::vector<int>& c) {
        found = c;
        return true;
    });
    return found;
}

bool is_acyclic(const Digraph& g) {
    // graph case: only circuits with at least 3 vertices count
    if (g.is_graph()) return !has_undirected_cycle(g, full_mask(g.n));
    auto out = out_masks(g);
    return !has_circuit_mask(out, g.n, full_mask(g.n));
}

int tau(const Digraph& g, const ParamLimits& lim) {
    if (g.n > lim.tau_max_n) throw TooLarge("tau exact search limit exceeded");
    if (g.n >= 32) throw TooLarge("vertex count above mask width");
    auto out = out_masks(g);
    std::uint32_t all = full_mask(g.n);
    if (!has_circuit_mask(out, g.n, all)) return 0;
    for (int k = 1; k <= g.n; ++k) {
        // Gosper's hack over k-subsets
        std::uint32_t s = (1u << k) - 1;
        while (s <= all) {
            if ((s & all) == s && !has_circuit_mask(out, g.n, all & ~s)) return k;
            std::uint32_t c = s & -s, r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
            if (c == 0) break;
        }
    }
    return g.n;
}

int alpha(const Digraph& g, const ParamLimits& lim) { return g.n - tau(g, lim); }

namespace {

int nu_rec(const Digraph& g, std::uint32_t mask,
           std::unordered_map<std::uint32_t, int>& memo,
           const std::vector<std::uint32_t>& out, bool graph_mode) {
    if (mask == 0) return 0;
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    int v = 0;
    for (int i = 1; i <= g.n; ++i)
        if (mask >> (i - 1) & 1) {
            v = i;
            break;
        }
    int best = nu_rec(g, mask & ~(1u << (v - 1)), memo, out, graph_mode);
    // circuits through v: enumerate induced ones with v as minimum vertex
    std::vector<std::vector<int>> circuits;
    bool stop = false;
    std::vector<int> path = {v};
    auto collect = [&](const std::vector<int>& c) {
        circuits.push_back(c);
        return false;
    };
    if (graph_mode)
        undirected_chordless_from(g, mask, path, collect, stop);
    else
        induced_circuits_from(out, g.n, mask, v, path, collect, stop);
    for (const auto& c : circuits) {
        std::uint32_t cm = 0;
        for (int u : c) cm |= 1u << (u - 1);
        best = std::max(best, 1 + nu_rec(g, mask & ~cm, memo, out, graph_mode));
    }
    memo[mask] = best;
    return best;
}

}  // namespace

int nu(const Digraph& g, const ParamLimits& lim) {
    if (g.n > lim.nu_max_n) throw TooLarge("nu exact search limit exceeded");
    std::unordered_map<std::uint32_t, int> memo;
    auto out = out_masks(g);
    return nu_rec(g, full_mask(g.n), memo, out, g.is_graph());
}

namespace {

int cc_rec(std::uint32_t mask, std::unordered_map<std::uint32_t, int>& memo, int n,
           const std::vector<std::uint32_t>& mutual) {
    if (mask == 0) return 0;
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    int v = 0;
    for (int i = 1; i <= n; ++i)
        if (mask >> (i - 1) & 1) {
            v = i;
            break;
        }
    int best = n + 1;
    // DFS over cliques containing v inside mask
    std::vector<std::pair<std::uint32_t, std::uint32_t>> stack;  // (clique, candidates)
    stack.push_back({1u << (v - 1), mutual[v] & mask});
    while (!stack.empty()) {
        auto [k, cand] = stack.back();
        stack.pop_back();
        best = std::min(best, 1 + cc_rec(mask & ~k, memo, n, mutual));
        for (int u = 1; u <= n; ++u) {
            if (!(cand >> (u - 1) & 1)) continue;
            std::uint32_t rest = cand & mutual[u];
            // keep only candidates above u to enumerate each clique once
            rest &= ~((1u << u) - 1);
            stack.push_back({k | (1u << (u - 1)), rest});
        }
    }
    memo[mask] = best;
    return best;
}

}  // namespace

int clique_cover_number(const Digraph& g, const ParamLimits& lim) {
    if (g.n > lim.cc_max_n) throw TooLarge("clique cover exact search limit exceeded");
    auto out = out_masks(g);
    std::vector<std::uint32_t> mutual(g.n + 1, 0);
    for (int u = 1; u <= g.n; ++u)
        for (int v = 1; v <= g.n; ++v)
            if (u != v && (out[u] >> (v - 1) & 1) && (out[v] >> (u - 1) & 1))
                mutual[u] |= 1u << (v - 1);
    std::unordered_map<std::uint32_t, int> memo;
    return cc_rec(full_mask(g.n), memo, g.n, mutual);
}

Digraph contract_arc(const Digraph& g, int i1, int i2) {
    if (!g.has_arc(i1, i2)) throw PreconditionViolated("(i1,i2) is not an arc");
    if (g.has_arc(i2, i1)) throw PreconditionViolated("reciprocal arc (i2,i1) present");
    if (g.out_degree(i1) != 1) throw PreconditionViolated("out-degree of i1 must be 1");
    std::set<std::pair<int, int>> arcs;
    auto relabel = [&](int v) { return v > i1 ? v - 1 : v; };
    for (const auto& [u, v] : g.arcs) {
        if (u == i1) continue;                       // only (i1,i2), dropped
        int vv = (v == i1) ? i2 : v;                 // redirect arcs into i1
        if (u == vv) continue;                       // cannot happen: (i2,i1) absent
        arcs.insert({relabel(u), relabel(vv)});
    }
    return Digraph(g.n - 1, std::move(arcs));
}

namespace {

// Rows e_u - e_next along each circuit, identity rows elsewhere.
FqMatrix circuit_difference_matrix(const Digraph& g, const Field& f,
                                   const std::vector<std::vector<int>>& circuits) {
    FqMatrix m = FqMatrix::identity(f, g.n);
    for (const auto& c : circuits) {
        for (size_t i = 0; i < c.size(); ++i) {
            int u = c[i], w = c[(i + 1) % c.size()];
            m.at(u - 1, w - 1) = f.neg(1);
        }
    }
    return m;
}

bool fits(const FqMatrix& m, const Digraph& g) {
    for (int i = 1; i <= g.n; ++i)
        for (int j = 1; j <= g.n; ++j) {
            felem v = m.at(i - 1, j - 1);
            if (i == j && v != 1) return false;
            if (i != j && !g.has_arc(i, j) && v != 0) return false;
        }
    return true;
}

struct ReduceStep {
    enum Kind { Delete, Contract } kind;
    int i1 = 0, i2 = 0;           // labels in the graph the step was applied to
    std::vector<int> in_nbrs_i1;  // Contract only: {j : (j,i1) in E}, pre-step labels
    int n_before = 0;
};

Digraph delete_vertex(const Digraph& g, int v) {
    std::set<std::pair<int, int>> arcs;
    auto relabel = [&](int u) { return u > v ? u - 1 : u; };
    for (const auto& [a, b] : g.arcs) {
        if (a == v || b == v) continue;
        arcs.insert({relabel(a), relabel(b)});
    }
    return Digraph(g.n - 1, std::move(arcs));
}

FqMatrix lift_delete(const FqMatrix& mp, const Field& f, int v) {
    int n = mp.rows() + 1;
    FqMatrix m(f, n, n);
    auto old_index = [&](int i) { return i > v ? i - 1 : i; };  // 1-based
    for (int i = 1; i <= n; ++i) {
        if (i == v) {
            m.at(i - 1, i - 1) = 1;
            continue;
        }
        for (int j = 1; j <= n; ++j) {
            if (j == v) continue;
            m.at(i - 1, j - 1) = mp.at(old_index(i) - 1, old_index(j) - 1);
        }
    }
    return m;
}

FqMatrix lift_contract(const FqMatrix& mp, const Field& f, const ReduceStep& st) {
    int n = st.n_before;
    int i1 = st.i1, i2 = st.i2;
    auto image = [&](int v) { return v > i1 ? v - 1 : v; };  // pre-step -> post-step label
    int c_img = image(i2);
    std::set<int> in_set(st.in_nbrs_i1.begin(), st.in_nbrs_i1.end());
    FqMatrix m(f, n, n);
    // row i1 = e_i1 - e_i2
    m.at(i1 - 1, i1 - 1) = 1;
    m.at(i1 - 1, i2 - 1) = f.neg(1);
    for (int i = 1; i <= n; ++i) {
        if (i == i1) continue;
        int ip = image(i);
        for (int j = 1; j <= n; ++j) {
            if (j == i1 || j == i2) continue;
            m.at(i - 1, j - 1) = mp.at(ip - 1, image(j) - 1);
        }
        felem carried = mp.at(ip - 1, c_img - 1);
        if (in_set.count(i)) {
            m.at(i - 1, i1 - 1) = carried;
            m.at(i - 1, i2 - 1) = 0;
        } else {
            m.at(i - 1, i1 - 1) = 0;
            m.at(i - 1, i2 - 1) = carried;
        }
    }
    return m;
}

bool tau_at_most(const Digraph& g, int k) {
    auto out = out_masks(g);
    std::uint32_t all = full_mask(g.n);
    if (!has_circuit_mask(out, g.n, all)) return true;
    if (k == 0) return false;
    if (k == 1) {
        for (int v = 1; v <= g.n; ++v)
            if (!has_circuit_mask(out, g.n, all & ~(1u << (v - 1)))) return true;
        return false;
    }
    for (int u = 1; u <= g.n; ++u)
        for (int v = u + 1; v <= g.n; ++v)
            if (!has_circuit_mask(out, g.n, all & ~(1u << (u - 1)) & ~(1u << (v - 1))))
                return true;
    return false;  // only used for k <= 2
}

}  // namespace

FqMatrix reduce_tau2(const Digraph& g, const Field& f) {
    if (f.q() <= g.n) throw FieldTooSmall("reduce_tau2 needs q > n");
    if (tau_at_most(g, 1) || !tau_at_most(g, 2))
        throw PreconditionViolated("tau(G) must be exactly 2");

    // Two vertex-disjoint circuits give the matrix outright.
    {
        std::optional<std::vector<int>> c1, c2;
        for_each_induced_circuit(g, full_mask(g.n), [&](const std::vector<int>& c) {
            std::uint32_t cm = 0;
            for (int u : c) cm |= 1u << (u - 1);
            std::set<std::pair<int, int>> arcs;
            for (const auto& [a, b] : g.arcs)
                if (!(cm >> (a - 1) & 1) && !(cm >> (b - 1) & 1)) arcs.insert({a, b});
            Digraph induced(g.n, std::move(arcs));
            auto other = find_circuit(induced);
            if (other) {
                c1 = c;
                c2 = other;
                return true;
            }
            return false;
        });
        if (c1) {
            FqMatrix m = circuit_difference_matrix(g, f, {*c1, *c2});
            if (!fits(m, g) || rank(m) != g.n - 2)
                throw Error("internal: circuit packing certificate invalid");
            return m;
        }
    }

    // nu == 1: contract/delete until every out-degree is >= 2.
    Digraph h = g;
    std::vector<ReduceStep> steps;
    for (;;) {
        int zero = 0, one = 0;
        for (int v = 1; v <= h.n && zero == 0; ++v)
            if (h.out_degree(v) == 0) zero = v;
        if (zero) {
            steps.push_back({ReduceStep::Delete, zero, 0, {}, h.n});
            h = delete_vertex(h, zero);
            continue;
        }
        for (int v = 1; v <= h.n && one == 0; ++v) {
            if (h.out_degree(v) != 1) continue;
            int nb = 0;
            for (int w = 1; w <= h.n; ++w)
                if (h.has_arc(v, w)) nb = w;
            if (!h.has_arc(nb, v)) {
                ReduceStep st{ReduceStep::Contract, v, nb, {}, h.n};
                for (int j = 1; j <= h.n; ++j)
                    if (h.has_arc(j, v)) st.in_nbrs_i1.push_back(j);
                steps.push_back(std::move(st));
                h = contract_arc(h, v, nb);
                one = v;
            }
        }
        if (one) continue;
        bool all_ge2 = true;
        for (int v = 1; v <= h.n; ++v)
            if (h.out_degree(v) < 2) all_ge2 = false;
        if (all_ge2) break;
        throw PreconditionViolated("reduction stuck; graph violates tau==2 structure");
    }

    FqMatrix l = multicast_matrix(h, f);
    // Fitting matrix from the multicast encoder: row i = e_i - x_i with
    // x_i supported on the out-neighborhood and e_i - x_i in <L>.
    FqMatrix fit(f, h.n, h.n);
    for (int i = 1; i <= h.n; ++i) {
        std::vector<fvec> rows;
        for (int r = 0; r < l.rows(); ++r) rows.push_back(l.row(r));
        std::vector<int> side;
        for (int j = 1; j <= h.n; ++j)
            if (h.has_arc(i, j)) side.push_back(j);
        for (int j : side) {
            fvec e(h.n, 0);
            e[j - 1] = 1;
            rows.push_back(e);
        }
        fvec target(h.n, 0);
        target[i - 1] = 1;
        auto comb = row_combination(FqMatrix::from_rows(f, rows, h.n), target);
        if (!comb) throw Error("internal: multicast matrix misses a unit vector");
        fvec row(h.n, 0);
        row[i - 1] = 1;
        for (size_t s = 0; s < side.size(); ++s) {
            felem a = (*comb)[l.rows() + s];
            row[side[s] - 1] = f.neg(a);  // e_i - sum a_j e_j stays in <L>
        }
        fit.set_row(i - 1, row);
    }
    FqMatrix m = fit;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        if (it->kind == ReduceStep::Delete)
            m = lift_delete(m, f, it->i1);
        else
            m = lift_contract(m, f, *it);
    }
    if (!fits(m, g) || rank(m) != g.n - 2)
        throw Error("internal: lifted certificate invalid");
    return m;
}

TauDecision decide_minrank_n_minus_1(const Digraph& g, const Field& f) {
    if (f.q() <= g.n) throw FieldTooSmall("corollary requires q > n");
    auto out = out_masks(g);
    std::uint32_t all = full_mask(g.n);
    if (!has_circuit_mask(out, g.n, all))
        return {TauDecision::Acyclic, std::nullopt, "acyclic: min-rank equals the order n"};
    if (tau_at_most(g, 1)) {
        auto c = find_circuit(g);
        FqMatrix m = circuit_difference_matrix(g, f, {*c});
        if (!fits(m, g) || rank(m) != g.n - 1)
            throw Error("internal: tau=1 certificate invalid");
        return {TauDecision::MinrankIsNMinus1, std::move(m), "tau(G) == 1"};
    }
    if (tau_at_most(g, 2)) {
        FqMatrix m = reduce_tau2(g, f);
        return {TauDecision::TauAtLeast2, std::move(m),
                "tau(G) == 2: min-rank is n-2 (certificate attached)"};
    }
    return {TauDecision::TauAtLeast2, std::nullopt, "tau(G) >= 3: min-rank is at most n-2"};
}

}  // namespace icbound
