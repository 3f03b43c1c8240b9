#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pricewave {

/// Reaction nonlinearity applied to the field value at the re-entry points.
/// All three choices are odd and normalized so that phi(1) = 1.
enum class Nonlinearity { Sign, Linear, Tanh };

struct NonlinearitySpec {
    Nonlinearity kind = Nonlinearity::Tanh;

    double operator()(double r) const;
};

/// phi_1(r) = sign(r), phi_2(r) = r, phi_3(r) = tanh(r)/tanh(1).
/// sign(0) is taken as 0, which keeps the map odd.
inline double phi_eval(const NonlinearitySpec& spec, double r) {
    switch (spec.kind) {
        case Nonlinearity::Sign:
            return r > 0.0 ? 1.0 : (r < 0.0 ? -1.0 : 0.0);
        case Nonlinearity::Linear:
            return r;
        case Nonlinearity::Tanh:
            return std::tanh(r) / std::tanh(1.0);
    }
    throw std::logic_error("phi_eval: unknown nonlinearity");
}

inline double NonlinearitySpec::operator()(double r) const { return phi_eval(*this, r); }

inline std::string to_string(Nonlinearity kind) {
    switch (kind) {
        case Nonlinearity::Sign: return "sign";
        case Nonlinearity::Linear: return "linear";
        case Nonlinearity::Tanh: return "tanh";
    }
    return "?";
}

inline Nonlinearity parse_nonlinearity(std::string_view name) {
    if (name == "sign" || name == "phi1") return Nonlinearity::Sign;
    if (name == "linear" || name == "phi2") return Nonlinearity::Linear;
    if (name == "tanh" || name == "phi3") return Nonlinearity::Tanh;
    throw std::invalid_argument("unknown nonlinearity '" + std::string(name) +
                                "' (expected sign|linear|tanh)");
}

/// Physical parameters of the trend-dependent model.  The diffusion
/// coefficient is sigma^2/2 and the transaction cost is the re-entry
/// offset; both default to 1, the normalization every closed-form
/// result in this library is stated in.
struct ModelConfig {
    double diffusion = 1.0;
    double transaction_cost = 1.0;
    double trend_coupling = 0.0;  // R
    NonlinearitySpec nonlinearity{};

    void validate() const {
        if (!(diffusion > 0.0)) throw std::invalid_argument("diffusion must be > 0");
        if (!(transaction_cost > 0.0)) throw std::invalid_argument("transaction_cost must be > 0");
    }
    bool normalized() const { return diffusion == 1.0 && transaction_cost == 1.0; }
};

/// Piecewise-linear stationary profile: odd about the price offset,
/// constant +-rho outside the transaction band.
struct EquilibriumProfile {
    double rho = 1.0;
    double price_offset = 0.0;
};

inline double equilibrium_eval(const EquilibriumProfile& prof, double a, double x) {
    if (!(a > 0.0)) throw std::invalid_argument("equilibrium_eval: a must be > 0");
    const double s = x - prof.price_offset;
    if (s < -a) return prof.rho;
    if (s > a) return -prof.rho;
    return -prof.rho * s / a;
}

/// Splits a sampled signed field into buyer/vendor parts,
/// f = f_B - f_V with both parts nonnegative.
inline std::pair<std::vector<double>, std::vector<double>>
sign_parts(const std::vector<double>& w) {
    std::vector<double> buyers(w.size()), vendors(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        buyers[i] = w[i] > 0.0 ? w[i] : 0.0;
        vendors[i] = w[i] < 0.0 ? -w[i] : 0.0;
    }
    return {std::move(buyers), std::move(vendors)};
}

}  // namespace pricewave
