#pragma once

namespace spie {

// Vacuum permittivity [F/m], CODATA. One shared value everywhere so that
// tolerance budgets are consistent between solver and oracles.
inline constexpr double eps0 = 8.8541878128e-12;

}  // namespace spie
