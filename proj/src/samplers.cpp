#include "siegel/samplers.hpp"

#include <cmath>
#include <string>

namespace siegel {

SamplerSpec SamplerSpec::exact_x2() {
    SamplerSpec s;
    s.kind = Kind::ExactX2;
    return s;
}

SamplerSpec SamplerSpec::goldstein_mayer(std::int64_t p) {
    SamplerSpec s;
    s.kind = Kind::GoldsteinMayer;
    s.p = p;
    return s;
}

bool is_prime(std::int64_t p) {
    if (p < 2) {
        return false;
    }
    for (std::int64_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) {
            return false;
        }
    }
    return true;
}

void SamplerSpec::validate_for(int n) const {
    if (kind == Kind::ExactX2) {
        if (n != 2) {
            throw SpecMismatch(
                "the exact-X2 sampler only exists for n = 2 (got n = " +
                std::to_string(n) + ")");
        }
        return;
    }
    if (n < 2) {
        throw SpecMismatch("goldstein-mayer requires n >= 2");
    }
    if (p < 101 || !is_prime(p)) {
        throw InvalidPrime("goldstein-mayer requires a prime p >= 101, got " +
                           std::to_string(p));
    }
}

SamplerSpec SamplerSpec::from_json(const nlohmann::json& j) {
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "exact-X2") {
            return exact_x2();
        }
        if (kind == "goldstein-mayer") {
            SamplerSpec s = goldstein_mayer(j.value("p", std::int64_t{100003}));
            if (s.p < 101 || !is_prime(s.p)) {
                throw InvalidPrime(
                    "goldstein-mayer requires a prime p >= 101, got " +
                    std::to_string(s.p));
            }
            return s;
        }
        throw ConfigError("unknown sampler kind \"" + kind +
                          "\" (known: exact-X2, goldstein-mayer)");
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad sampler descriptor: ") + e.what());
    }
}

nlohmann::json SamplerSpec::to_json() const {
    if (kind == Kind::ExactX2) {
        return {{"kind", "exact-X2"}};
    }
    return {{"kind", "goldstein-mayer"}, {"p", p}};
}

Lattice sample_X2(RandomStream& stream) {
    // Rejection from the strip {|x| ≤ 1/2, y ≥ √3/2} with density ∝ y^{-2}
    // in y (inverse-CDF draw), accepting on |z| ≥ 1.
    const double y_min = std::sqrt(3.0) / 2.0;
    double x;
    double y;
    do {
        x = stream.next_double() - 0.5;
        y = y_min / (1.0 - stream.next_double());
    } while (x * x + y * y < 1.0);
    const double theta = M_PI * stream.next_double();

    const double sy = std::sqrt(y);
    Mat B(2, 2);
    B << 1.0 / sy, x / sy, 0.0, sy;
    Mat rot(2, 2);
    rot << std::cos(theta), -std::sin(theta), std::sin(theta),
        std::cos(theta);
    return lattice_from_basis(rot * B);
}

Mat gm_integer_basis(int n, std::int64_t p,
                     const std::vector<std::int64_t>& a) {
    if (static_cast<int>(a.size()) != n - 1) {
        throw std::invalid_argument("gm_integer_basis: need n-1 coefficients");
    }
    Mat B = Mat::Identity(n, n);
    B(0, 0) = static_cast<double>(p);
    for (int j = 1; j < n; ++j) {
        B(0, j) = static_cast<double>(a[static_cast<std::size_t>(j - 1)]);
    }
    return B;
}

Lattice sample_GM(int n, std::int64_t p, RandomStream& stream) {
    SamplerSpec::goldstein_mayer(p).validate_for(n);
    std::vector<std::int64_t> a(static_cast<std::size_t>(n - 1));
    for (auto& ai : a) {
        ai = static_cast<std::int64_t>(
            stream.next_below(static_cast<std::uint64_t>(p)));
    }
    const double scale = std::pow(static_cast<double>(p),
                                  -1.0 / static_cast<double>(n));
    const Mat reduced = lll_reduce(scale * gm_integer_basis(n, p, a));
    return lattice_from_basis(reduced);
}

Lattice sample_X(int n, const SamplerSpec& spec, RandomStream& stream) {
    spec.validate_for(n);
    if (spec.kind == SamplerSpec::Kind::ExactX2) {
        return sample_X2(stream);
    }
    return sample_GM(n, spec.p, stream);
}

Lattice sample_H_fiber(int n, const SamplerSpec& spec, RandomStream& stream) {
    if (n < 3) {
        throw DimensionTooSmall("sample_H_fiber: need n >= 3, got n = " +
                                std::to_string(n));
    }
    const SamplerSpec sub_spec =
        (n - 1 == 2) ? SamplerSpec::exact_x2() : spec;
    const Lattice base = sample_X(n - 1, sub_spec, stream);

    // A lattice containing e_1 is determined by the projected (n-1)-lattice
    // together with a homomorphism from it to R/Z giving each point's offset
    // along e_1. Haar measure on that dual torus is exactly independent
    // uniform offsets t_j for the basis vectors of the projection. (Mixing
    // the offsets through the basis matrix instead would sample the torus
    // through a fundamental domain of the wrong lattice and bias the draw.)
    Mat B = Mat::Zero(n, n);
    B(0, 0) = 1.0; // e_1
    for (int j = 0; j < n - 1; ++j) {
        B(0, j + 1) = stream.next_double();
        B.block(1, j + 1, n - 1, 1) = base.basis.col(j);
    }
    return lattice_from_basis(B);
}

Lattice sample_lattice_containing(const Vec& v, const SamplerSpec& spec,
                                  RandomStream& stream,
                                  const Mat* completion_override) {
    const int n = static_cast<int>(v.size());
    if (n < 3) {
        throw DimensionTooSmall(
            "sample_lattice_containing: need n >= 3, got n = " +
            std::to_string(n));
    }
    const Mat g =
        completion_override ? *completion_override : complete_to_unimodular(v);
    const Lattice fiber = sample_H_fiber(n, spec, stream);
    return lattice_from_basis(g * fiber.basis);
}

} // namespace siegel
