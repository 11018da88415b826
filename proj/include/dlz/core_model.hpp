// core_model.hpp - linear Landau-Zener drive and adiabatic-frame quantities
//
// Unit convention used throughout the library: hbar = k_B = 1 and the
// tunnelling gap Delta = 1. Energies and temperatures are measured in Delta,
// times in 1/Delta and sweep velocities in Delta^2.

#pragma once

namespace dlz {

inline constexpr double kGap = 1.0;

// Linear drive eps(t) = v t + eps0 over the window [-t0, t0] with t0 = span / v.
class SweepProtocol {
public:
    static constexpr double kDefaultSpan = 80.0;

    // Throws ValidationError unless velocity > 0 and span_product > 0 (both finite).
    explicit SweepProtocol(double velocity, double offset = 0.0,
                           double span_product = kDefaultSpan);

    double velocity() const noexcept { return velocity_; }
    double offset() const noexcept { return offset_; }
    double span_product() const noexcept { return span_; }

    double t_begin() const noexcept { return -half_window(); }
    double t_end() const noexcept { return half_window(); }
    double half_window() const noexcept { return span_ / velocity_; }

    // Largest splitting reached over the window; sets the fastest precession.
    double max_splitting() const noexcept;

private:
    double velocity_;
    double offset_;
    double span_;
};

// Instantaneous quantities of the frame rotated by the mixing angle phi = atan(eps/Delta).
struct FrameQuantities {
    double t{0.0};
    double eps{0.0};
    double splitting{kGap}; // E = sqrt(Delta^2 + eps^2)
    double phi{0.0};
    double phi_dot{0.0};
    double f1{0.0};         // sin(phi) = eps / E
    double f2{1.0};         // cos(phi) = Delta / E
};

double evaluate_drive(const SweepProtocol& p, double t) noexcept;

FrameQuantities frame_at(const SweepProtocol& p, double t) noexcept;

// Frame for a bias pinned at eps: the inertial term vanishes (phi_dot = 0).
FrameQuantities static_frame(double eps, double t = 0.0) noexcept;

} // namespace dlz
