#include "fpio/outcome.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fpio/errors.hpp"

namespace fpio {

namespace {
constexpr double kZeroAmplitude = 1e-300;
constexpr double kInfiniteRatio = 1e-13;
}  // namespace

Ratio Ratio::finite(double value) {
    if (!std::isfinite(value) || value < 0.0) {
        std::ostringstream msg;
        msg << "finite ratio must be a non-negative finite number, got " << value;
        throw DomainError(msg.str());
    }
    return Ratio(Kind::finite, value);
}

Ratio Ratio::of_amplitudes(std::complex<double> numerator, std::complex<double> denominator) {
    const double num = std::abs(numerator);
    const double den = std::abs(denominator);
    if (num <= kZeroAmplitude && den <= kZeroAmplitude) return indeterminate();
    if (den <= kInfiniteRatio * num) return infinite();
    const double q = num / den;
    return finite(q * q);
}

double Ratio::value() const {
    if (kind_ != Kind::finite) throw std::logic_error("Ratio::value() called on a non-finite ratio");
    return value_;
}

OutcomeDistribution outcome_distribution(Ratio r1, Ratio r2) {
    if (r1.is_indeterminate() || r2.is_indeterminate()) {
        throw SingularError("outcome distribution undefined: indeterminate coincidence ratio");
    }
    if (r1.is_infinite() && r2.is_infinite()) return {0.0, 1.0, 0.0};
    if (r1.is_infinite()) {
        const double b = r2.value();
        return {0.0, b / (1.0 + b), 1.0 / (1.0 + b)};
    }
    if (r2.is_infinite()) {
        const double a = r1.value();
        return {1.0 / (1.0 + a), a / (1.0 + a), 0.0};
    }
    const double a = r1.value();
    const double b = r2.value();
    if (a == 0.0 && b == 0.0) {
        throw SingularError("outcome distribution undefined for R1 = R2 = 0");
    }
    const double s = a + b + a * b;
    return {b / s, a * b / s, a / s};
}

OutcomeDistribution outcome_from_amplitudes(std::complex<double> a_rr, std::complex<double> a_rl,
                                            std::complex<double> a_ll) {
    const double rr = std::norm(a_rr);
    const double rl = std::norm(a_rl);
    const double ll = std::norm(a_ll);
    const double s = rr + rl + ll;
    if (!(s > 0.0)) throw SingularError("outcome distribution undefined: all amplitudes vanish");
    return {rr / s, rl / s, ll / s};
}

}  // namespace fpio
