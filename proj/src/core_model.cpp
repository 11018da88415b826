#include "dlz/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dlz/errors.hpp"

namespace dlz {

SweepProtocol::SweepProtocol(double velocity, double offset, double span_product)
    : velocity_(velocity), offset_(offset), span_(span_product) {
    if (!std::isfinite(velocity) || velocity <= 0.0)
        throw ValidationError("sweep velocity must be finite and > 0, got " + std::to_string(velocity));
    if (!std::isfinite(span_product) || span_product <= 0.0)
        throw ValidationError("span product must be finite and > 0, got " + std::to_string(span_product));
    if (!std::isfinite(offset))
        throw ValidationError("drive offset must be finite");
    if (!std::isfinite(half_window()))
        throw ValidationError("sweep window span/velocity is not finite");
}

double SweepProtocol::max_splitting() const noexcept {
    const double edge = std::max(std::abs(offset_ - span_), std::abs(offset_ + span_));
    return std::hypot(kGap, edge);
}

double evaluate_drive(const SweepProtocol& p, double t) noexcept {
    return p.velocity() * t + p.offset();
}

FrameQuantities frame_at(const SweepProtocol& p, double t) noexcept {
    FrameQuantities fq = static_frame(evaluate_drive(p, t), t);
    // d/dt atan(eps/Delta) = v Delta / E^2
    fq.phi_dot = p.velocity() * kGap / (fq.splitting * fq.splitting);
    return fq;
}

FrameQuantities static_frame(double eps, double t) noexcept {
    FrameQuantities fq;
    fq.t = t;
    fq.eps = eps;
    fq.splitting = std::hypot(kGap, eps);
    fq.phi = std::atan2(eps, kGap);
    fq.phi_dot = 0.0;
    fq.f1 = eps / fq.splitting;
    fq.f2 = kGap / fq.splitting;
    return fq;
}

} // namespace dlz
