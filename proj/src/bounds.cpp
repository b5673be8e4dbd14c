#include "sparsectrl/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sparsectrl/errors.hpp"

namespace sparsectrl {

namespace {

void check_inputs(int n, int s, double p, const SupportFamily& family,
                  const BoundParams& params) {
    if (!(s >= 1 && s < n)) throw std::invalid_argument("bound: require 1 <= s < N");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bound: p must lie in [0, 1]");
    if (family.n() != n || family.s() != s)
        throw std::invalid_argument("bound: family must have ambient N and budget s");
    if (!(params.big_c > 0.0 && params.small_c > 0.0))
        throw std::invalid_argument("bound: constants must be strictly positive");
    if (!family.covers_all())
        throw model_assumption_error("bound: the theorem requires the family to cover all N indices");
}

double undirected_exponent(int n, int i) { return 0.5 * i * (2.0 * n - i - 1.0); }

double directed_exponent(int n, int i) { return static_cast<double>(i) * (n - 1.0); }

BoundResult evaluate(int n, int s, double p, const SupportFamily& family,
                     const BoundParams& params, GraphKind model) {
    BoundResult result;
    result.terms.resize(static_cast<std::size_t>(s) + 1);
    for (int i = 0; i <= s; ++i) {
        const double count = static_cast<double>(count_subsets_q(i, family));
        double exponent, bracket;
        if (model == GraphKind::Undirected) {
            exponent = undirected_exponent(n, i);
            bracket = 1.0 - params.big_c *
                                std::exp(-params.small_c * std::pow(p * (n - i), 1.0 / 32.0));
        } else {
            exponent = directed_exponent(n, i);
            bracket = 1.0 - std::exp(-params.small_c * p * (n - i));
        }
        const double decay = std::pow(1.0 - p, exponent);
        result.terms[static_cast<std::size_t>(i)] = count * decay * bracket;
        result.raw_q += result.terms[static_cast<std::size_t>(i)];
    }
    result.q = std::clamp(result.raw_q, 0.0, 1.0);
    return result;
}

} // namespace

BoundResult undirected_bound(int n, int s, double p, const SupportFamily& family,
                             const BoundParams& params) {
    check_inputs(n, s, p, family, params);
    BoundResult result = evaluate(n, s, p, family, params, GraphKind::Undirected);
    const double edge = 1.0 / (n - s);
    result.valid = (p >= edge && p <= 1.0 - edge);
    return result;
}

BoundResult directed_bound(int n, int s, double p, const SupportFamily& family,
                           const BoundParams& params) {
    check_inputs(n, s, p, family, params);
    BoundResult result = evaluate(n, s, p, family, params, GraphKind::Directed);
    const double edge = params.big_c * std::log(static_cast<double>(n - s)) / (n - s);
    result.valid = (p > edge && p <= 1.0 - edge);
    return result;
}

double structural_bound(int n, int s, double p, const SupportFamily& family, GraphKind model) {
    check_inputs(n, s, p, family, BoundParams{});
    double sum = 0.0;
    for (int i = 0; i <= s; ++i) {
        const double count = static_cast<double>(count_subsets_q(i, family));
        const double exponent = model == GraphKind::Undirected ? undirected_exponent(n, i)
                                                               : directed_exponent(n, i);
        sum += count * std::pow(1.0 - p, exponent);
    }
    return std::min(1.0, sum);
}

} // namespace sparsectrl
