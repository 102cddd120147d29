#pragma once

namespace bectrans {

// CODATA 2018 reduced Planck constant, J s.
inline constexpr double k_hbar = 1.054571817e-34;

// 87Rb atomic mass, kg.
inline constexpr double k_mass_rb87 = 1.44316060e-25;

}  // namespace bectrans
