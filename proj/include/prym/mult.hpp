#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "prym/solver.hpp"

namespace prym {

struct MultiplicityResult {
    int multiplicity;
    int stabilized_at;
    std::vector<int> dims; // dual-space dimensions mu_0, mu_1, ..., mu_{stabilized_at}
};

struct MultiplicityError : std::runtime_error {
    MultiplicityError(const std::string& msg, std::vector<int> dims_)
        : std::runtime_error(msg), dims(std::move(dims_)) {}
    std::vector<int> dims;
};

// Length of the local ring of the four-entry scheme at an isolated solution,
// by the Macaulay dual-space method with divided-power functionals: translate
// the point to the origin, bound the functional order by d, and grow d until
// two consecutive dual dimensions agree. Transversal points short-circuit to 1
// (2x2 Jacobian minor invertible) unless force_dual is set.
// degree_cap < 0 means the default 2(p+3).
MultiplicityResult local_multiplicity(const PrymFiberSystem& sys, const SolutionPoint& pt,
                                      int degree_cap = -1, bool force_dual = false);

// t-adic valuation of the coefficient of x^{p-1} in f_t^{(p-1)/2}, computed
// over F_q[t]/(t^{cap+1}); f_t is given by ascending x-coefficients, each a
// polynomial in t. nullopt = the coefficient vanished through the cap.
std::optional<int> vanishing_order_in_family(const std::vector<Poly>& f_t, int cap);

} // namespace prym
