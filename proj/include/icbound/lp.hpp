#pragma once

#include <optional>
#include <vector>

#include "icbound/errors.hpp"
#include "icbound/rational.hpp"

namespace icbound {

/// Small exact-arithmetic linear/integer program. All variables carry a
/// finite lower bound (0 by default); upper bounds are optional.
struct LinearProgram {
    enum class Sense { Min, Max };
    enum class Rel { Le, Eq, Ge };

    struct Constraint {
        std::vector<Rat> coeffs;  // dense, one per variable
        Rel rel = Rel::Le;
        Rat rhs = 0;
    };

    Sense sense = Sense::Min;
    int num_vars = 0;
    std::vector<Rat> objective;
    std::vector<Constraint> constraints;
    std::vector<Rat> lower;                 // default 0
    std::vector<std::optional<Rat>> upper;  // default unbounded
    std::vector<bool> integral;             // default false

    explicit LinearProgram(int n = 0) { resize(n); }
    void resize(int n);
    void add_constraint(std::vector<Rat> coeffs, Rel rel, Rat rhs);
};

struct LpSolution {
    Rat objective;
    std::vector<Rat> assignment;
};

/// Exact optimum of the LP relaxation (integrality flags ignored); simplex
/// with Bland's rule. Throws Infeasible or Unbounded.
LpSolution lp_solve(const LinearProgram& p);

/// Exact mixed-integer optimum; depth-first branch and bound on the most
/// fractional variable (ties by lowest index), floor branch first.
LpSolution ilp_solve(const LinearProgram& p);

}  // namespace icbound
