#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cvgme/covariance.hpp"

// Published reference states, witnesses and derived parameters, stored
// exactly as printed (CMs to two decimals, witnesses with their 1e-2 factor).
namespace cvgme::reference {

struct NamedMatrix {
  std::string name;
  int n_modes;
  Matrix matrix;
};

Matrix gamma3();
Matrix z3();
Matrix gamma4_linear();
Matrix z4_linear();
Matrix gamma4_tshape();
Matrix z4_tshape();
Matrix gamma3_prime();  // output of the full circuit
Matrix z3_prime();
Matrix gamma3_bar();    // output of the simplified circuit
Matrix z3_bar();

std::vector<NamedMatrix> all_matrices();
/// Throws std::out_of_range for an unknown name.
NamedMatrix by_name(const std::string& name);

/// Minimal PPT eigenvalues per pair in (AB, AC, BC) or
/// (AB, AC, AD, BC, BD, CD) order.
std::vector<double> ppt_gamma3();
std::vector<double> ppt_gamma4_linear();
std::vector<double> ppt_gamma4_tshape();
std::vector<double> ppt_gamma3_prime();
std::vector<double> ppt_gamma3_bar();

/// Printed witness values Tr[gamma Z] - 1.
inline constexpr double kValueGamma3 = -0.143;
inline constexpr double kValueGamma4Linear = -0.069;
inline constexpr double kValueGamma4Tshape = -0.068;
inline constexpr double kValueGamma3Prime = -0.138;
inline constexpr double kValueGamma3Bar = -0.139;
/// Thermal noise level up to which gamma3 stays detected.
inline constexpr double kNoiseGamma3 = 0.1;

std::vector<double> symplectic_eigenvalues_gamma3();  // (A, B, C)
std::vector<double> squeezing_gamma3();               // s_j < 1
std::vector<double> transmissivities_u();             // (AB, AC, BC)
std::vector<double> transmissivities_v();             // (AB, AC, BC)
std::vector<double> displacement_alpha();
std::vector<double> displacement_beta();

/// FNV-1a over every stored number; guards against accidental edits.
std::uint64_t checksum();

}  // namespace cvgme::reference
