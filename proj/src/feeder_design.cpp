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

#include "amafris/feeder_design.hpp"

#include "amafris/csv.hpp"
#include "amafris/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace amafris {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_phase(double phase)
{
    double w = std::fmod(phase, two_pi);
    if (w < 0.0)
        w += two_pi;
    // fmod can return two_pi - ulp which should read as 0 after rounding
    return w >= two_pi ? 0.0 : w;
}

} // namespace

ComplexMatrix build_T(const ArrayLayout& ris, const ArrayLayout& amaf, double focal_distance, Illumination)
{
    if (!(focal_distance > 0.0))
        throw std::invalid_argument("focal distance must be positive");

    ComplexMatrix T(static_cast<Eigen::Index>(ris.size()), static_cast<Eigen::Index>(amaf.size()));
    const double f2 = focal_distance * focal_distance;
    for (std::size_t k = 0; k < ris.size(); ++k) {
        const Vec3 p = ris.position(k);
        for (std::size_t l = 0; l < amaf.size(); ++l) {
            const Vec3 q = amaf.position(l);
            const double dx = p.x() - q.x();
            const double dz = p.z() - q.z();
            const double r = std::sqrt(dx * dx + dz * dz + f2);
            if (!(r > 0.0))
                throw std::invalid_argument("overlapping RIS and AMAF elements");
            const double cos_psi = focal_distance / r;
            // sqrt(E_A E_R) with E_A = E_R = 4 cos^2(psi)
            const double element = 4.0 * cos_psi * cos_psi;
            const double amplitude = element / (two_pi * r);
            T(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) =
                std::polar(amplitude, -pi * r);
        }
    }
    return T;
}

PrincipalEigenmode principal_eigenmode(const ComplexMatrix& T, const PowerIterationOptions& options)
{
    if (T.size() == 0 || T.norm() == 0.0)
        throw std::invalid_argument("principal eigenmode of a zero matrix");

    const ComplexMatrix gram = T.adjoint() * T;
    const Eigen::Index n = gram.rows();

    // Fixed, fully populated start vector: reproducible and never orthogonal
    // to a coordinate axis.
    ComplexVector x(n);
    for (Eigen::Index i = 0; i < n; ++i)
        x(i) = Complex(1.0 + 0.173 * static_cast<double>(i), 0.061 * static_cast<double>(i % 5));
    x.normalize();

    double lambda = 0.0;
    int it = 0;
    bool converged = false;
    while (it < options.max_iterations) {
        ++it;
        const ComplexVector y = gram * x;
        const double next = x.dot(y).real(); // x^H G x
        const double residual = (y - next * x).norm();
        const double change = std::abs(next - lambda);
        lambda = next;
        const double ynorm = y.norm();
        if (ynorm == 0.0)
            throw convergence_error("power iteration collapsed to zero");
        x = y / ynorm;
        if (change <= options.tolerance * lambda && residual <= options.tolerance * lambda) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw convergence_error("power iteration did not converge in " + std::to_string(options.max_iterations) +
                                " iterations");

    Eigen::Index largest = 0;
    x.cwiseAbs().maxCoeff(&largest);
    x *= std::polar(1.0, -std::arg(x(largest)));
    x.normalize();

    PrincipalEigenmode pem;
    pem.v1 = x;
    const ComplexVector tv = T * x;
    pem.sigma1 = tv.norm();
    pem.u1 = tv / pem.sigma1;
    pem.iterations = it;
    return pem;
}

ComplexVector template_weights(double sigma1, const ComplexVector& u1)
{
    return (sigma1 * u1.cwiseAbs()).cast<Complex>();
}

double taper_db(const ComplexVector& weights)
{
    if (weights.size() == 0)
        throw std::invalid_argument("taper of an empty weight vector");
    const Eigen::VectorXd amp = weights.cwiseAbs();
    return 10.0 * std::log10(amp.maxCoeff() / amp.minCoeff());
}

ComplexVector steer(const ComplexVector& template_w, const Direction& d0, const ArrayLayout& ris)
{
    if (static_cast<std::size_t>(template_w.size()) != ris.size())
        throw dimension_error("template length does not match RIS size");
    return steering_vector(ris, d0).cwiseProduct(template_w);
}

ComplexVector PhaseMask::weights() const
{
    ComplexVector w(static_cast<Eigen::Index>(phases.size()));
    for (std::size_t k = 0; k < phases.size(); ++k)
        w(static_cast<Eigen::Index>(k)) = std::polar(1.0, phases[k]);
    return w;
}

PhaseMask steering_mask(const ArrayLayout& ris, const Direction& d0, const ComplexVector& illumination)
{
    if (static_cast<std::size_t>(illumination.size()) != ris.size())
        throw dimension_error("illumination length does not match RIS size");
    const Vec3 n = wavefront_normal(d0);
    PhaseMask mask;
    mask.phases.resize(ris.size());
    for (std::size_t k = 0; k < ris.size(); ++k)
        mask.phases[k] = wrap_phase(-pi * ris.position(k).dot(n) - std::arg(illumination(static_cast<Eigen::Index>(k))));
    return mask;
}

PhaseMask quantize_phases(const PhaseMask& mask, int bits)
{
    if (bits < 1)
        throw std::invalid_argument("quantization needs at least one bit");
    const double levels = std::ldexp(1.0, bits);
    const double step = two_pi / levels;
    PhaseMask out;
    out.quantization_bits = bits;
    out.phases.reserve(mask.phases.size());
    for (double phase : mask.phases) {
        double q = std::round(wrap_phase(phase) / step);
        if (q >= levels)
            q -= levels;
        out.phases.push_back(q * step);
    }
    return out;
}

double captured_power_fraction(const ComplexMatrix& T, const ComplexVector& b)
{
    if (T.cols() != b.size())
        throw dimension_error("excitation length does not match AMAF size");
    return (T * b).squaredNorm();
}

FeederModule design_feeder(const ArrayLayout& ris, const ArrayLayout& amaf, double focal_distance, Illumination side)
{
    FeederModule m{ris, amaf, focal_distance, side, build_T(ris, amaf, focal_distance, side), 0.0, {}, {}, {}};
    const PrincipalEigenmode pem = principal_eigenmode(m.T);
    m.sigma1 = pem.sigma1;
    m.v1 = pem.v1;
    m.u1 = pem.u1;
    m.template_w = template_weights(pem.sigma1, pem.u1);
    return m;
}

void write_element_csv(std::ostream& os, const ArrayLayout& layout, const std::vector<double>& values)
{
    if (values.size() != layout.size())
        throw dimension_error("value count does not match layout size");
    os << "n_x=" << layout.n_x() << ",n_z=" << layout.n_z() << '\n';
    for (double v : values)
        os << format_number(v, 12) << '\n';
}

void write_phase_mask_csv(std::ostream& os, const ArrayLayout& layout, const PhaseMask& mask)
{
    write_element_csv(os, layout, mask.phases);
}

} // namespace amafris
