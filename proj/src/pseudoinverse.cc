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

#include "qnoise/pseudoinverse.h"

#include <stdexcept>

namespace qnoise {

TruncatedPseudoinverse truncated_pseudoinverse(const Eigen::MatrixXd &m, double rcond) {
    if (m.size() == 0) {
        throw std::invalid_argument("pseudoinverse of an empty matrix");
    }
    if (!(rcond >= 0)) {
        throw std::invalid_argument("rcond must be non-negative");
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    TruncatedPseudoinverse out;
    out.singular_values = svd.singularValues();
    out.rcond = rcond;
    out.cutoff = rcond * out.singular_values(0);
    Eigen::VectorXd inverted = Eigen::VectorXd::Zero(out.singular_values.size());
    for (Eigen::Index i = 0; i < inverted.size(); ++i) {
        if (out.singular_values(i) > out.cutoff) {
            inverted(i) = 1.0 / out.singular_values(i);
            ++out.rank;
        }
    }
    if (out.rank == 0) {
        throw std::domain_error("all singular values fall below the pseudoinverse cutoff");
    }
    out.matrix = svd.matrixV() * inverted.asDiagonal() * svd.matrixU().transpose();
    return out;
}

}  // namespace qnoise
