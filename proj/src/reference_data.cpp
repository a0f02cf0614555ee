#include "cvgme/reference_data.hpp"

#include <cstring>
#include <stdexcept>

namespace cvgme::reference {

namespace {

// clang-format off
constexpr double kGamma3[] = {
   1.34,  0,    -0.35,  0,    -0.82,  0,
   0,    10.00,  0,     8.45,  0,     1.87,
  -0.35,  0,     7.80,  0,    -8.05,  0,
   0,     8.45,  0,     7.92,  0,     2.09,
  -0.82,  0,    -8.05,  0,    10.00,  0,
   0,     1.87,  0,     2.09,  0,     1.62};

constexpr double kZ3[] = {
   6.8,   0,    -0.4,   0,     0,     0,
   0,    34.3,   0,   -39.5,   0,     0,
  -0.4,   0,    25.1,   0,    20.9,   0,
   0,   -39.5,   0,    46.1,   0,    -2.0,
   0,     0,    20.9,   0,    17.5,   0,
   0,     0,     0,    -2.0,   0,     6.6};

constexpr double kGamma4Linear[] = {
   2.83,  0,    -0.02,  0,    -1.38,  0,     2.83,  0,
   0,     7.18,  0,     8.06,  0,     7.09,  0,    -4.12,
  -0.02,  0,     3.91,  0,    -2.46,  0,     4.73,  0,
   0,     8.06,  0,     9.79,  0,     8.47,  0,    -4.81,
  -1.38,  0,    -2.46,  0,     2.58,  0,    -4.68,  0,
   0,     7.09,  0,     8.47,  0,    10.00,  0,    -3.08,
   2.83,  0,     4.73,  0,    -4.68,  0,    10.00,  0,
   0,    -4.12,  0,    -4.81,  0,    -3.08,  0,     3.22};

constexpr double kZ4Linear[] = {
   2.70,  0,    -1.12,  0,     0,     0,     0,     0,
   0,    33.29,  0,   -28.67,  0,     0,     0,     0,
  -1.12,  0,     6.86,  0,     6.30,  0,     0,     0,
   0,   -28.67,  0,    29.50,  0,    -5.46,  0,     0,
   0,     0,     6.30,  0,    74.73,  0,    33.42,  0,
   0,     0,     0,    -5.46,  0,     7.37,  0,     2.18,
   0,     0,     0,     0,    33.42,  0,    16.30,  0,
   0,     0,     0,     0,     0,     2.18,  0,     4.11};

constexpr double kGamma4Tshape[] = {
   5.23,  0,     0.45,  0,    -0.02,  0,    -2.43,  0,
   0,     1.16,  0,     3.00,  0,     1.15,  0,     0.51,
   0.45,  0,     3.35,  0,     0.91,  0,    -5.20,  0,
   0,     3.00,  0,    10.00,  0,     3.52,  0,     2.06,
  -0.02,  0,     0.91,  0,     4.09,  0,    -2.97,  0,
   0,     1.15,  0,     3.52,  0,     1.62,  0,     0.62,
  -2.43,  0,    -5.20,  0,    -2.97,  0,    10.00,  0,
   0,     0.51,  0,     2.06,  0,     0.62,  0,     1.49};

constexpr double kZ4Tshape[] = {
   1.984,  0,      -0.815,  0,       0,       0,       0,       0,
   0,     76.150,   0,     -26.031,  0,       0,       0,       0,
  -0.815,  0,      37.883,  0,      -1.525,   0,      19.701,   0,
   0,    -26.031,   0,      18.014,  0,     -22.092,   0,      -0.760,
   0,      0,      -1.525,  0,       2.895,   0,       0,       0,
   0,      0,       0,     -22.092,  0,      54.640,   0,       0,
   0,      0,      19.701,  0,       0,       0,      10.563,   0,
   0,      0,       0,      -0.760,  0,       0,       0,       3.149};

constexpr double kGamma3Prime[] = {
   1.34,  0,    -0.35,  0,    -0.82,  0,
   0,    10.01,  0,     8.45,  0,     1.86,
  -0.35,  0,     7.78,  0,    -8.03,  0,
   0,     8.45,  0,     7.92,  0,     2.08,
  -0.82,  0,    -8.03,  0,     9.99,  0,
   0,     1.86,  0,     2.08,  0,     1.62};

constexpr double kZ3Prime[] = {
   6.86,  0,    -0.45,  0,     0,     0,
   0,    34.11,  0,   -39.31,  0,     0,
  -0.45,  0,    25.04,  0,    20.87,  0,
   0,   -39.31,  0,    45.92,  0,    -2.05,
   0,     0,    20.87,  0,    17.43,  0,
   0,     0,     0,    -2.05,  0,     6.62};

constexpr double kGamma3Bar[] = {
   1.39,  0,    -0.21,  0,    -1.05,  0,
   0,     9.95,  0,     8.26,  0,     1.7,
  -0.21,  0,     7.36,  0,    -7.83,  0,
   0,     8.26,  0,     7.63,  0,     1.94,
  -1.05,  0,    -7.83,  0,    10.12,  0,
   0,     1.7,   0,     1.94,  0,     1.59};

constexpr double kZ3Bar[] = {
   5.87,  0,    -0.54,  0,     0,     0,
   0,    33.71,  0,   -39.6,   0,     0,
  -0.54,  0,    26.22,  0,    21.01,  0,
   0,   -39.6,   0,    47.1,   0,    -1.87,
   0,     0,    21.01,  0,    16.86,  0,
   0,     0,     0,    -1.87,  0,     6.17};

constexpr double kPptGamma3[] = {0.002, 0.849, 0.004};
constexpr double kPptGamma4Linear[] = {0.005, 0.347, 0.213, 0.004, 0.087, 0.224};
constexpr double kPptGamma4Tshape[] = {0.0481, 0.0032, 0.5256, 0.1103, 0.0001, 0.5489};
constexpr double kPptGamma3Prime[] = {0.005, 0.852, 0.010};
constexpr double kPptGamma3Bar[] = {0.027, 0.862, 0.037};

constexpr double kNu[] = {6.835, 1.012, 1.004};
constexpr double kSqueezing[] = {0.396, 0.851, 0.478};
constexpr double kTransU[] = {0.555, 0.947, 0.492};
constexpr double kTransV[] = {0.716, 0.904, 0.657};
constexpr double kAlpha[] = {0.2, -0.7, 1.3};
constexpr double kBeta[] = {1.3, -0.5, 0.3};
// clang-format on

template <std::size_t K>
Matrix square(const double (&data)[K], double scale = 1.0) {
  int n = 0;
  while (static_cast<std::size_t>(n * n) < K) ++n;
  Matrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = scale * data[r * n + c];
  return m;
}

template <std::size_t K>
std::vector<double> vec(const double (&data)[K]) {
  return std::vector<double>(data, data + K);
}

template <std::size_t K>
void mix(std::uint64_t& h, const double (&data)[K]) {
  for (double v : data) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof v);
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ull;
    }
  }
}

}  // namespace

Matrix gamma3() { return square(kGamma3); }
Matrix z3() { return square(kZ3, 1e-2); }
Matrix gamma4_linear() { return square(kGamma4Linear); }
Matrix z4_linear() { return square(kZ4Linear, 1e-2); }
Matrix gamma4_tshape() { return square(kGamma4Tshape); }
Matrix z4_tshape() { return square(kZ4Tshape, 1e-2); }
Matrix gamma3_prime() { return square(kGamma3Prime); }
Matrix z3_prime() { return square(kZ3Prime, 1e-2); }
Matrix gamma3_bar() { return square(kGamma3Bar); }
Matrix z3_bar() { return square(kZ3Bar, 1e-2); }

std::vector<NamedMatrix> all_matrices() {
  return {{"gamma3", 3, gamma3()},
          {"Z3", 3, z3()},
          {"gamma4_linear", 4, gamma4_linear()},
          {"Z4_linear", 4, z4_linear()},
          {"gamma4_tshape", 4, gamma4_tshape()},
          {"Z4_tshape", 4, z4_tshape()},
          {"gamma3_prime", 3, gamma3_prime()},
          {"Z3_prime", 3, z3_prime()},
          {"gamma3_bar", 3, gamma3_bar()},
          {"Z3_bar", 3, z3_bar()}};
}

NamedMatrix by_name(const std::string& name) {
  for (auto& m : all_matrices())
    if (m.name == name) return m;
  throw std::out_of_range("no reference matrix named '" + name + "'");
}

std::vector<double> ppt_gamma3() { return vec(kPptGamma3); }
std::vector<double> ppt_gamma4_linear() { return vec(kPptGamma4Linear); }
std::vector<double> ppt_gamma4_tshape() { return vec(kPptGamma4Tshape); }
std::vector<double> ppt_gamma3_prime() { return vec(kPptGamma3Prime); }
std::vector<double> ppt_gamma3_bar() { return vec(kPptGamma3Bar); }

std::vector<double> symplectic_eigenvalues_gamma3() { return vec(kNu); }
std::vector<double> squeezing_gamma3() { return vec(kSqueezing); }
std::vector<double> transmissivities_u() { return vec(kTransU); }
std::vector<double> transmissivities_v() { return vec(kTransV); }
std::vector<double> displacement_alpha() { return vec(kAlpha); }
std::vector<double> displacement_beta() { return vec(kBeta); }

std::uint64_t checksum() {
  std::uint64_t h = 14695981039346656037ull;
  mix(h, kGamma3);
  mix(h, kZ3);
  mix(h, kGamma4Linear);
  mix(h, kZ4Linear);
  mix(h, kGamma4Tshape);
  mix(h, kZ4Tshape);
  mix(h, kGamma3Prime);
  mix(h, kZ3Prime);
  mix(h, kGamma3Bar);
  mix(h, kZ3Bar);
  mix(h, kPptGamma3);
  mix(h, kPptGamma4Linear);
  mix(h, kPptGamma4Tshape);
  mix(h, kPptGamma3Prime);
  mix(h, kPptGamma3Bar);
  mix(h, kNu);
  mix(h, kSqueezing);
  mix(h, kTransU);
  mix(h, kTransV);
  mix(h, kAlpha);
  mix(h, kBeta);
  return h;
}

}  // namespace cvgme::reference
