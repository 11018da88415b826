// bath.hpp - ohmic heat baths and the time-dependent Bloch-Redfield rates

#pragma once

#include "dlz/core_model.hpp"

namespace dlz {

enum class Axis { transverse_x, longitudinal_z };

// Ohmic bath J(w) = alpha * w * exp(-w / cutoff) coupled through sigma_x or sigma_z.
struct BathSpec {
    static constexpr double kDefaultCutoff = 10.0;

    Axis axis{Axis::longitudinal_z};
    double alpha{0.0};
    double cutoff{kDefaultCutoff};

    void validate() const; // alpha >= 0, cutoff > 0
};

// Both baths sit at the same temperature. T = 0 is the limit beta -> infinity.
struct Environment {
    double temperature{0.0};
    BathSpec bath_x{Axis::transverse_x, 0.0, BathSpec::kDefaultCutoff};
    BathSpec bath_z{Axis::longitudinal_z, 0.0, BathSpec::kDefaultCutoff};

    static Environment make(double temperature, double alpha_x, double alpha_z,
                            double cutoff = BathSpec::kDefaultCutoff);

    double beta() const noexcept; // +inf at T = 0
    void validate() const;
};

struct RateSet {
    double gamma_r{0.0};  // relaxation
    double gamma_d{0.0};  // pure dephasing
    double gamma_xz{0.0}; // cross-dephasing, sign follows alpha_x - alpha_z
    double gamma_zx{0.0};
    double r_bar_x{0.0};  // thermal target tanh(beta E / 2)
    double splitting{kGap};
    double phi_dot{0.0};
};

// Throws DomainError for omega < 0.
double spectral_density(const BathSpec& b, double omega);

// 1 / (exp(beta w) - 1). Throws DomainError unless omega > 0 and beta > 0; beta may be +inf.
double bose_occupation(double beta, double omega);

// lim_{w -> 0} n(w) J(w) = alpha / beta, evaluated in closed form.
double zero_frequency_weight(const BathSpec& b, double beta) noexcept;

// coth(x) for x >= 0 without overflow; returns 1 for x = +inf.
double safe_coth(double x) noexcept;

RateSet rates_at(const Environment& env, const FrameQuantities& fq) noexcept;

} // namespace dlz
