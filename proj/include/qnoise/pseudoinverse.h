// Copyright 2026 The qnoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QNOISE_PSEUDOINVERSE_H
#define QNOISE_PSEUDOINVERSE_H

#include <Eigen/Dense>

namespace qnoise {

struct TruncatedPseudoinverse {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd singular_values;  // all of them, descending
    Eigen::Index rank = 0;            // number retained
    double rcond = 0.0;
    double cutoff = 0.0;              // rcond * largest singular value
};

/// Moore-Penrose pseudoinverse keeping singular values above rcond * s_max.
/// Throws std::domain_error if nothing survives the cutoff.
TruncatedPseudoinverse truncated_pseudoinverse(const Eigen::MatrixXd &m, double rcond);

}  // namespace qnoise

#endif  // QNOISE_PSEUDOINVERSE_H
