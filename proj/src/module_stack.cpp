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

#include "amafris/module_stack.hpp"

#include "amafris/csv.hpp"
#include "amafris/errors.hpp"
#include "amafris/units.hpp"

#include <ostream>
#include <stdexcept>

namespace amafris {

namespace {

Vec3 axis_vector(StackAxis axis) { return axis == StackAxis::x ? Vec3::UnitX() : Vec3::UnitZ(); }

} // namespace

StackedSystem::StackedSystem(std::shared_ptr<const FeederModule> design, int modules, double separation, StackAxis axis)
    : design_(std::move(design)), modules_(modules), separation_(separation), axis_(axis)
{
    if (!design_)
        throw std::invalid_argument("stacked system needs a module design");
    if (modules_ < 1)
        throw std::invalid_argument("stacked system needs at least one module");
    if (!(separation_ >= 0.0))
        throw std::invalid_argument("module separation must be nonnegative");

    const Vec3 step = pitch() * axis_vector(axis_);
    by_offset_.reserve(static_cast<std::size_t>(2 * modules_ - 1));
    for (int offset = -(modules_ - 1); offset <= modules_ - 1; ++offset) {
        if (offset == 0) {
            by_offset_.push_back(design_->T);
            continue;
        }
        const ArrayLayout amaf = design_->amaf_layout.translated(static_cast<double>(offset) * step);
        by_offset_.push_back(build_T(design_->ris_layout, amaf, design_->focal_distance, design_->illumination));
    }
}

double StackedSystem::pitch() const
{
    const double width = axis_ == StackAxis::x ? design_->ris_layout.width_x() : design_->ris_layout.width_z();
    return width + separation_;
}

const ComplexMatrix& StackedSystem::block(int i, int j) const
{
    if (i < 0 || j < 0 || i >= modules_ || j >= modules_)
        throw std::out_of_range("module index out of range");
    return by_offset_[static_cast<std::size_t>(j - i + modules_ - 1)];
}

ArrayLayout StackedSystem::ris_layout(int i) const
{
    if (i < 0 || i >= modules_)
        throw std::out_of_range("module index out of range");
    return design_->ris_layout.translated(static_cast<double>(i) * pitch() * axis_vector(axis_));
}

ComplexMatrix build_N(const StackedSystem& stack, const std::vector<PhaseMask>& masks,
                      const std::vector<ComplexVector>& amaf_weights, Crosstalk crosstalk)
{
    const auto k = static_cast<int>(masks.size());
    if (k < 1 || k > stack.module_count())
        throw dimension_error("active module count must be between 1 and the stack size");
    if (amaf_weights.size() != masks.size())
        throw dimension_error("one AMAF weight vector per module is required");

    const auto np = static_cast<Eigen::Index>(stack.design().ris_layout.size());
    const auto na = static_cast<Eigen::Index>(stack.design().amaf_layout.size());
    std::vector<ComplexVector> w;
    w.reserve(masks.size());
    for (const auto& m : masks) {
        if (static_cast<Eigen::Index>(m.phases.size()) != np)
            throw dimension_error("phase mask length does not match RIS size");
        w.push_back(m.weights());
    }
    for (const auto& b : amaf_weights)
        if (b.size() != na)
            throw dimension_error("AMAF weight length does not match AMAF size");

    ComplexMatrix N = ComplexMatrix::Zero(k * np, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (crosstalk == Crosstalk::exclude && i != j)
                continue;
            const ComplexVector field = stack.block(i, j) * amaf_weights[static_cast<std::size_t>(j)];
            N.block(i * np, j, np, 1) = w[static_cast<std::size_t>(i)].cwiseProduct(field);
        }
    return N;
}

std::vector<PhaseMask> steered_masks(const StackedSystem& stack, const std::vector<Direction>& directions,
                                     int quantization_bits)
{
    if (static_cast<int>(directions.size()) > stack.module_count())
        throw dimension_error("more beams than modules");
    std::vector<PhaseMask> masks;
    masks.reserve(directions.size());
    for (std::size_t i = 0; i < directions.size(); ++i) {
        PhaseMask m = steering_mask(stack.ris_layout(static_cast<int>(i)), directions[i], stack.design().u1);
        masks.push_back(quantization_bits > 0 ? quantize_phases(m, quantization_bits) : std::move(m));
    }
    return masks;
}

std::vector<Aperture> column_apertures(const StackedSystem& stack, const ComplexMatrix& N, int column)
{
    const auto np = static_cast<Eigen::Index>(stack.design().ris_layout.size());
    const auto k = static_cast<int>(N.rows() / np);
    if (N.rows() != k * np || column < 0 || column >= N.cols())
        throw dimension_error("N does not match the stacked RIS layout");
    std::vector<Aperture> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        out.push_back({stack.ris_layout(i), N.block(i * np, column, np, 1)});
    return out;
}

double next_ratio(const StackedSystem& stack, int i, int j)
{
    if (i == j)
        throw std::invalid_argument("NEXT is defined between distinct modules");
    const ComplexVector& v1 = stack.design().v1;
    return to_db((stack.block(i, j) * v1).squaredNorm() / (stack.block(j, j) * v1).squaredNorm());
}

Eigen::MatrixXd next_table(const StackedSystem& stack)
{
    const int k = stack.module_count();
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (i != j)
                t(i, j) = next_ratio(stack, i, j);
    return t;
}

void write_next_csv(std::ostream& os, const Eigen::MatrixXd& table)
{
    os << "ris\\amaf";
    for (Eigen::Index j = 0; j < table.cols(); ++j)
        os << ',' << j;
    os << '\n';
    for (Eigen::Index i = 0; i < table.rows(); ++i) {
        os << i;
        for (Eigen::Index j = 0; j < table.cols(); ++j)
            os << ',' << format_fixed(table(i, j), 3);
        os << '\n';
    }
}

} // namespace amafris
