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

// Near-field AMAF -> RIS feeding of one module and the principal eigenmode
// (PEM) design derived from it.

#include "amafris/array_response.hpp"

#include <iosfwd>
#include <vector>

namespace amafris {

enum class Illumination { front, back };

// Propagation matrix between RIS elements (rows) and AMAF elements
// (columns). Both layouts lie in parallel planes facing each other, F
// half-wavelengths apart; their x and z coordinates are taken as given, so
// an offset AMAF is expressed by translating its layout. Back illumination
// mirrors the feeder through the RIS plane and yields the same matrix.
//
//   T(k, l) = sqrt(E_A E_R) / (2 pi r) * exp(-j pi r),  E = 4 (F / r)^2
ComplexMatrix build_T(const ArrayLayout& ris, const ArrayLayout& amaf, double focal_distance,
                      Illumination side = Illumination::front);

struct PowerIterationOptions {
    double tolerance = 1e-12; // relative change of the dominant eigenvalue of T^H T
    int max_iterations = 10000;
};

struct PrincipalEigenmode {
    double sigma1 = 0.0;
    ComplexVector u1;
    ComplexVector v1;
    int iterations = 0;
};

// Principal singular triple of T via power iteration on T^H T. The global
// phase makes the largest-magnitude entry of v1 real and positive; u1 is
// T v1 / sigma1. Throws std::invalid_argument for a zero matrix and
// convergence_error if the iteration budget runs out.
PrincipalEigenmode principal_eigenmode(const ComplexMatrix& T, const PowerIterationOptions& options = {});

// sigma1 |u1|: real, nonnegative boresight template.
ComplexVector template_weights(double sigma1, const ComplexVector& u1);

// Amplitude taper of a template in dB, 10 log10(max |w| / min |w|).
double taper_db(const ComplexVector& weights);

// a(d0) .* template: linear phase gradient toward d0.
ComplexVector steer(const ComplexVector& template_w, const Direction& d0, const ArrayLayout& ris);

struct PhaseMask {
    std::vector<double> phases; // radians in [0, 2 pi)
    int quantization_bits = 0;  // 0 = continuous

    ComplexVector weights() const;
    bool operator==(const PhaseMask&) const = default;
};

// Phase-only RIS mask steering toward d0 while cancelling the illumination
// phase: arg a(d0) - arg u.
PhaseMask steering_mask(const ArrayLayout& ris, const Direction& d0, const ComplexVector& illumination);

// Round every phase to the nearest of 2^bits levels 2 pi q / 2^bits.
// Throws std::invalid_argument for bits < 1.
PhaseMask quantize_phases(const PhaseMask& mask, int bits);

// ||T b||^2 for a unit-norm AMAF excitation b.
double captured_power_fraction(const ComplexMatrix& T, const ComplexVector& b);

struct FeederModule {
    ArrayLayout ris_layout;
    ArrayLayout amaf_layout;
    double focal_distance = 0.0;
    Illumination illumination = Illumination::front;
    ComplexMatrix T;
    double sigma1 = 0.0;
    ComplexVector v1;
    ComplexVector u1;
    ComplexVector template_w;

    // |u1|: the template normalized to unit power on the RIS. Gain figures
    // quoted for a design are relative to this normalization.
    ComplexVector unit_template() const { return unit_power(template_w); }
};

FeederModule design_feeder(const ArrayLayout& ris, const ArrayLayout& amaf, double focal_distance,
                           Illumination side = Illumination::front);

// Row-major per-element values, one per line, after a dimension header.
void write_element_csv(std::ostream& os, const ArrayLayout& layout, const std::vector<double>& values);
void write_phase_mask_csv(std::ostream& os, const ArrayLayout& layout, const PhaseMask& mask);

} // namespace amafris
