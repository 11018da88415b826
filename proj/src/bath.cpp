#include "dlz/bath.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dlz/errors.hpp"

namespace dlz {

namespace {

const char* axis_name(Axis a) { return a == Axis::transverse_x ? "x" : "z"; }

} // namespace

void BathSpec::validate() const {
    if (!std::isfinite(alpha) || alpha < 0.0)
        throw ValidationError(std::string("bath ") + axis_name(axis) + ": coupling alpha must be >= 0, got " +
                              std::to_string(alpha));
    if (!std::isfinite(cutoff) || cutoff <= 0.0)
        throw ValidationError(std::string("bath ") + axis_name(axis) + ": cutoff must be > 0, got " +
                              std::to_string(cutoff));
}

Environment Environment::make(double temperature, double alpha_x, double alpha_z, double cutoff) {
    Environment env;
    env.temperature = temperature;
    env.bath_x = {Axis::transverse_x, alpha_x, cutoff};
    env.bath_z = {Axis::longitudinal_z, alpha_z, cutoff};
    env.validate();
    return env;
}

double Environment::beta() const noexcept {
    return temperature == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / temperature;
}

void Environment::validate() const {
    if (!std::isfinite(temperature) || temperature < 0.0)
        throw ValidationError("temperature must be >= 0, got " + std::to_string(temperature));
    bath_x.validate();
    bath_z.validate();
}

double spectral_density(const BathSpec& b, double omega) {
    if (!(omega >= 0.0))
        throw DomainError("spectral density requires omega >= 0, got " + std::to_string(omega));
    return b.alpha * omega * std::exp(-omega / b.cutoff);
}

double bose_occupation(double beta, double omega) {
    if (!(omega > 0.0) || !(beta > 0.0))
        throw DomainError("Bose occupation requires omega > 0 and beta > 0");
    return 1.0 / std::expm1(beta * omega);
}

double zero_frequency_weight(const BathSpec& b, double beta) noexcept {
    if (std::isinf(beta)) return 0.0;
    return b.alpha / beta;
}

double safe_coth(double x) noexcept {
    // Beyond x = 20 the next term of the expansion, 2 exp(-4x), is below 1e-34.
    if (x > 20.0) return 1.0 + 2.0 * std::exp(-2.0 * x);
    return 1.0 / std::tanh(x);
}

RateSet rates_at(const Environment& env, const FrameQuantities& fq) noexcept {
    constexpr double pi = std::numbers::pi;
    const double beta = env.beta();
    const double energy = fq.splitting;
    const double half_beta_e = std::isinf(beta) ? beta : 0.5 * beta * energy;

    const double coth = safe_coth(half_beta_e);
    const double jx = env.bath_x.alpha * energy * std::exp(-energy / env.bath_x.cutoff);
    const double jz = env.bath_z.alpha * energy * std::exp(-energy / env.bath_z.cutoff);
    const double wx = zero_frequency_weight(env.bath_x, beta);
    const double wz = zero_frequency_weight(env.bath_z, beta);
    const double f1f2 = fq.f1 * fq.f2;

    RateSet r;
    r.gamma_r = 2.0 * pi * coth * (fq.f1 * fq.f1 * jx + fq.f2 * fq.f2 * jz);
    r.gamma_d = 4.0 * pi * (wz + wx);
    r.gamma_xz = 4.0 * pi * f1f2 * (wx - wz);
    r.gamma_zx = 2.0 * pi * f1f2 * coth * (jx - jz);
    r.r_bar_x = std::tanh(half_beta_e);
    r.splitting = energy;
    r.phi_dot = fq.phi_dot;
    return r;
}

} // namespace dlz
