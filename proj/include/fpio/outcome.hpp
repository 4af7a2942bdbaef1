#pragma once

#include <complex>

namespace fpio {

/// Non-negative probability ratio that may be infinite (zero denominator)
/// or indeterminate (0/0). Infinity is carried as a tag, never as a
/// floating-point infinity.
class Ratio {
public:
    enum class Kind { finite, infinite, indeterminate };

    static Ratio finite(double value);
    static Ratio infinite() { return Ratio(Kind::infinite, 0.0); }
    static Ratio indeterminate() { return Ratio(Kind::indeterminate, 0.0); }

    /// |numerator / denominator|^2. Infinite when |denominator| <= 1e-13 |numerator|,
    /// indeterminate when both vanish.
    static Ratio of_amplitudes(std::complex<double> numerator, std::complex<double> denominator);

    Kind kind() const noexcept { return kind_; }
    bool is_finite() const noexcept { return kind_ == Kind::finite; }
    bool is_infinite() const noexcept { return kind_ == Kind::infinite; }
    bool is_indeterminate() const noexcept { return kind_ == Kind::indeterminate; }

    /// Finite value; throws std::logic_error otherwise.
    double value() const;

    bool operator==(const Ratio&) const = default;

private:
    Ratio(Kind kind, double value) : kind_(kind), value_(value) {}

    Kind kind_;
    double value_;
};

/// Outside two-photon detection probabilities. R = behind mirror 2 (mode 1),
/// L = behind mirror 1 (mode 2).
struct OutcomeDistribution {
    double p_rr;
    double p_rl;
    double p_ll;

    double sum() const { return p_rr + p_rl + p_ll; }
};

/// From R1 = P(R,L)/P(R,R) and R2 = P(R,L)/P(L,L):
///   P(R,R) = R2/S, P(R,L) = R1 R2/S, P(L,L) = R1/S, S = R1 + R2 + R1 R2,
/// with infinite ratios handled by their algebraic limits.
/// Throws SingularError when both ratios are zero or either is indeterminate.
OutcomeDistribution outcome_distribution(Ratio r1, Ratio r2);

/// Probabilities proportional to |A_RR|^2, |A_RL|^2, |A_LL|^2. Coincides with
/// outcome_distribution() wherever the latter is defined.
OutcomeDistribution outcome_from_amplitudes(std::complex<double> a_rr, std::complex<double> a_rl,
                                            std::complex<double> a_ll);

}  // namespace fpio
