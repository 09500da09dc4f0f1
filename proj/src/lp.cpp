#include "icbound/lp.hpp"

#include <algorithm>

namespace icbound {

Rat rat_from_string(const std::string& s) {
    auto pos = s.find('/');
    try {
        if (pos == std::string::npos) return Rat(Int(s));
        return Rat(Int(s.substr(0, pos)), Int(s.substr(pos + 1)));
    } catch (const std::exception&) {
        throw ParseError("bad rational literal: " + s);
    }
}

Int common_denominator(const std::vector<Rat>& values) {
    Int l = 1;
    for (const Rat& v : values) l = boost::multiprecision::lcm(l, rat_den(v));
    return l;
}

void LinearProgram::resize(int n) {
    num_vars = n;
    objective.assign(n, Rat(0));
    lower.assign(n, Rat(0));
    upper.assign(n, std::nullopt);
    integral.assign(n, false);
}

void LinearProgram::add_constraint(std::vector<Rat> coeffs, Rel rel, Rat rhs) {
    if (static_cast<int>(coeffs.size()) != num_vars)
        throw DimensionMismatch("constraint width");
    constraints.push_back({std::move(coeffs), rel, std::move(rhs)});
}

namespace {

// Dense exact simplex on the tableau
//   rows: constraints (Ax = b, b >= 0, basis columns identified)
//   last row: objective (reduced costs), minimization.
struct Tableau {
    int rows = 0, cols = 0;  // cols includes the rhs column
    std::vector<std::vector<Rat>> t;
    std::vector<int> basis;  // basic variable per row

    Rat& at(int r, int c) { return t[r][c]; }
    const Rat& at(int r, int c) const { return t[r][c]; }

    void pivot(int pr, int pc) {
        Rat piv = t[pr][pc];
        for (int c = 0; c < cols; ++c) t[pr][c] /= piv;
        for (int r = 0; r <= rows; ++r) {
            if (r == pr) continue;
            Rat f = t[r][pc];
            if (f == 0) continue;
            for (int c = 0; c < cols; ++c) t[r][c] -= f * t[pr][c];
        }
        basis[pr] = pc;
    }

    // Bland's rule; `allowed` masks columns that may enter. Returns false at
    // optimality, throws Unbounded.
    bool step(const std::vector<bool>& allowed) {
        int enter = -1;
        for (int c = 0; c < cols - 1; ++c) {
            if (!allowed[c]) continue;
            if (t[rows][c] < 0) {
                enter = c;
                break;
            }
        }
        if (enter < 0) return false;
        int leave = -1;
        Rat best;
        for (int r = 0; r < rows; ++r) {
            if (t[r][enter] <= 0) continue;
            Rat ratio = t[r][cols - 1] / t[r][enter];
            if (leave < 0 || ratio < best ||
                (ratio == best && basis[r] < basis[leave])) {
                best = ratio;
                leave = r;
            }
        }
        if (leave < 0) throw Unbounded("objective unbounded below");
        pivot(leave, enter);
        return true;
    }
};

}  // namespace

LpSolution lp_solve(const LinearProgram& p) {
    // shift variables to x' = x - lower >= 0
    const int n = p.num_vars;
    std::vector<LinearProgram::Constraint> cons;
    for (const auto& c : p.constraints) {
        Rat shift = 0;
        for (int j = 0; j < n; ++j) shift += c.coeffs[j] * p.lower[j];
        LinearProgram::Constraint cc{c.coeffs, c.rel, c.rhs - shift};
        if (cc.rel == LinearProgram::Rel::Eq) {
            cc.rel = LinearProgram::Rel::Le;
            cons.push_back(cc);
            cc.rel = LinearProgram::Rel::Ge;
            cons.push_back(std::move(cc));
        } else {
            cons.push_back(std::move(cc));
        }
    }
    for (int j = 0; j < n; ++j) {
        if (!p.upper[j]) continue;
        std::vector<Rat> row(n, Rat(0));
        row[j] = 1;
        cons.push_back({std::move(row), LinearProgram::Rel::Le, *p.upper[j] - p.lower[j]});
    }

    const int m = static_cast<int>(cons.size());
    const int slack0 = n, art0 = n + m;
    const int ncols = n + m + m + 1;  // vars, slack/surplus, artificials, rhs
    Tableau tab;
    tab.rows = m;
    tab.cols = ncols;
    tab.t.assign(m + 1, std::vector<Rat>(ncols, Rat(0)));
    tab.basis.assign(m, -1);
    for (int i = 0; i < m; ++i) {
        Rat sign = 1;
        bool ge = cons[i].rel == LinearProgram::Rel::Ge;
        // normalize to  a x (+/- s) = b with b >= 0
        Rat b = cons[i].rhs;
        bool negate = b < 0;
        if (negate) {
            b = -b;
            ge = !ge;
            sign = -1;
        }
        for (int j = 0; j < n; ++j) tab.at(i, j) = sign * cons[i].coeffs[j];
        tab.at(i, slack0 + i) = ge ? Rat(-1) : Rat(1);
        tab.at(i, art0 + i) = 1;
        tab.at(i, ncols - 1) = b;
        tab.basis[i] = art0 + i;
    }
    // phase 1: minimize the artificial sum
    for (int i = 0; i < m; ++i) tab.at(m, art0 + i) = 1;
    for (int i = 0; i < m; ++i)
        for (int c = 0; c < ncols; ++c) tab.at(m, c) -= tab.at(i, c);
    std::vector<bool> allowed(ncols - 1, true);
    while (tab.step(allowed)) {
    }
    if (tab.at(m, ncols - 1) != 0) throw Infeasible("phase 1 optimum is nonzero");
    // pivot artificials out of the basis where possible
    for (int r = 0; r < m; ++r) {
        if (tab.basis[r] < art0) continue;
        int enter = -1;
        for (int c = 0; c < art0; ++c)
            if (tab.at(r, c) != 0) {
                enter = c;
                break;
            }
        if (enter >= 0) tab.pivot(r, enter);
    }
    for (int c = art0; c < ncols - 1; ++c) allowed[c] = false;

    // phase 2 objective (minimization; Max handled by negation)
    std::vector<Rat> obj(p.objective);
    if (p.sense == LinearProgram::Sense::Max)
        for (Rat& v : obj) v = -v;
    for (int c = 0; c < ncols; ++c) tab.at(m, c) = 0;
    for (int j = 0; j < n; ++j) tab.at(m, j) = obj[j];
    for (int r = 0; r < m; ++r) {
        int b = tab.basis[r];
        if (b < n && obj[b] != 0) {
            Rat f = obj[b];
            for (int c = 0; c < ncols; ++c) tab.at(m, c) -= f * tab.at(r, c);
        }
    }
    while (tab.step(allowed)) {
    }

    LpSolution sol;
    sol.assignment.assign(n, Rat(0));
    for (int r = 0; r < m; ++r)
        if (tab.basis[r] < n) sol.assignment[tab.basis[r]] = tab.at(r, ncols - 1);
    for (int j = 0; j < n; ++j) sol.assignment[j] += p.lower[j];
    sol.objective = 0;
    for (int j = 0; j < n; ++j) sol.objective += p.objective[j] * sol.assignment[j];
    // exact feasibility recheck
    for (const auto& c : p.constraints) {
        Rat lhs = 0;
        for (int j = 0; j < n; ++j) lhs += c.coeffs[j] * sol.assignment[j];
        bool ok = c.rel == LinearProgram::Rel::Le   ? lhs <= c.rhs
                  : c.rel == LinearProgram::Rel::Ge ? lhs >= c.rhs
                                                    : lhs == c.rhs;
        if (!ok) throw Error("internal: simplex solution violates a constraint");
    }
    for (int j = 0; j < n; ++j) {
        if (sol.assignment[j] < p.lower[j]) throw Error("internal: lower bound violated");
        if (p.upper[j] && sol.assignment[j] > *p.upper[j])
            throw Error("internal: upper bound violated");
    }
    return sol;
}

namespace {

void branch(const LinearProgram& p, std::optional<LpSolution>& best) {
    LpSolution rel;
    try {
        rel = lp_solve(p);
    } catch (const Infeasible&) {
        return;
    }
    bool minimize = p.sense == LinearProgram::Sense::Min;
    if (best) {
        if (minimize ? rel.objective >= best->objective
                     : rel.objective <= best->objective)
            return;
    }
    // most fractional integral variable, ties by lowest index
    int pick = -1;
    Rat best_frac = 0;
    for (int j = 0; j < p.num_vars; ++j) {
        if (!p.integral[j] || is_integer(rel.assignment[j])) continue;
        Int fl = rat_num(rel.assignment[j]) / rat_den(rel.assignment[j]);
        if (rel.assignment[j] < 0 && !is_integer(rel.assignment[j])) fl -= 1;
        Rat frac = rel.assignment[j] - Rat(fl);
        Rat dist = frac <= Rat(1, 2) ? frac : 1 - frac;  // closeness to 1/2
        if (pick < 0 || dist > best_frac) {
            pick = j;
            best_frac = dist;
        }
    }
    if (pick < 0) {
        best = rel;  // integral already; strictly better by the bound check
        return;
    }
    Int fl = rat_num(rel.assignment[pick]) / rat_den(rel.assignment[pick]);
    if (rel.assignment[pick] < 0) fl -= 1;
    {
        LinearProgram down = p;
        Rat f(fl);
        if (!down.upper[pick] || *down.upper[pick] > f) down.upper[pick] = f;
        if (down.lower[pick] <= *down.upper[pick]) branch(down, best);
    }
    {
        LinearProgram up = p;
        Rat c(fl + 1);
        if (up.lower[pick] < c) up.lower[pick] = c;
        if (!up.upper[pick] || up.lower[pick] <= *up.upper[pick]) branch(up, best);
    }
}

}  // namespace

LpSolution ilp_solve(const LinearProgram& p) {
    std::optional<LpSolution> best;
    branch(p, best);
    if (!best) throw Infeasible("no integral solution");
    return *best;
}

}  // namespace icbound
