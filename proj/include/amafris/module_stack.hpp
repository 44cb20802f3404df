// SPDX-License-Identifier: Apache-2.0
//
// amafris: array-fed RIS multibeam base station simulation library
// Copyright (C) 2026 The amafris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

// K identical AMAF-RIS modules placed side by side, including the near-end
// crosstalk (NEXT) between a feeder and its neighbours' surfaces.

#include "amafris/feeder_design.hpp"

#include <iosfwd>
#include <memory>
#include <vector>

namespace amafris {

enum class StackAxis { x, z };

enum class Crosstalk { include, exclude };

class StackedSystem {
public:
    // Adjacent RIS apertures are separated edge to edge by `separation`
    // half-wavelengths; each AMAF moves rigidly with its RIS.
    StackedSystem(std::shared_ptr<const FeederModule> design, int modules, double separation = 1.0,
                  StackAxis axis = StackAxis::x);

    int module_count() const { return modules_; }
    double separation() const { return separation_; }
    StackAxis axis() const { return axis_; }
    const FeederModule& design() const { return *design_; }

    // Center-to-center distance between adjacent modules.
    double pitch() const;

    // Propagation from AMAF j to RIS i. Depends only on j - i; all diagonal
    // blocks are the design's T.
    const ComplexMatrix& block(int i, int j) const;

    // RIS layout of module i in the common stacked frame.
    ArrayLayout ris_layout(int i) const;

private:
    std::shared_ptr<const FeederModule> design_;
    int modules_;
    double separation_;
    StackAxis axis_;
    std::vector<ComplexMatrix> by_offset_; // index (j - i) + modules - 1
};

// Block (i, j) of N is diag(w_i) T_ij b_j. The number of active modules is
// masks.size(), which must equal amaf_weights.size() and not exceed the
// stack size. Returns a (K N_p) x K matrix.
ComplexMatrix build_N(const StackedSystem& stack, const std::vector<PhaseMask>& masks,
                      const std::vector<ComplexVector>& amaf_weights, Crosstalk crosstalk = Crosstalk::include);

// Phase-only masks steering module i toward directions[i] (PEM illumination).
std::vector<PhaseMask> steered_masks(const StackedSystem& stack, const std::vector<Direction>& directions,
                                     int quantization_bits = 0);

// Column j of N split back into per-module apertures, for pattern evaluation.
std::vector<Aperture> column_apertures(const StackedSystem& stack, const ComplexMatrix& N, int column);

// 10 log10(||T_ij v1||^2 / ||T_jj v1||^2). Throws std::invalid_argument for i == j.
double next_ratio(const StackedSystem& stack, int i, int j);

// K x K NEXT table in dB with 0 on the diagonal.
Eigen::MatrixXd next_table(const StackedSystem& stack);
void write_next_csv(std::ostream& os, const Eigen::MatrixXd& table);

} // namespace amafris
