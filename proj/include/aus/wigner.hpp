#pragma once

#include <Eigen/Dense>

namespace aus {

// Wigner little-d matrix for doubled spin two_j at angle beta.
// Rows and columns run over m = -j..j (doubled index r = 2m, step 2).
// Log-factorial accumulation keeps the alternating sum stable for two_j <= ~40.
Eigen::MatrixXd wigner_little_d(int two_j, double beta);

}  // namespace aus
