#ifndef LCMIN_TESTS_SUPPORT_ORACLES_H
#define LCMIN_TESTS_SUPPORT_ORACLES_H

#include <cstdint>
#include <optional>
#include <vector>

#include "lcmin/milp.h"

namespace lcmin::testing {

// Optimum of a small LP with every variable boxed, by enumerating the basic
// solutions of all n-subsets of tight constraints. Integrality is ignored.
// Returns nullopt when the LP is infeasible.
std::optional<double> vertex_enumeration_lp(const milp::MilpModel& model);

// Optimum of a small MILP by trying every assignment of the integer
// variables and solving the rest with vertex_enumeration_lp.
std::optional<double> exhaustive_milp(const milp::MilpModel& model);

// Random LP with n boxed variables and m rows, coefficients in [-5, 5].
// About a third of the variables are integer when with_integers is set.
milp::MilpModel random_boxed_model(std::uint32_t seed, int n, int m,
                                   bool with_integers);

}  // namespace lcmin::testing

#endif  // LCMIN_TESTS_SUPPORT_ORACLES_H
