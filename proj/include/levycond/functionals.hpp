#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace levycond {

/// Finite-dimensional path functional f(X_{t_1}, ..., X_{t_n}) with f
/// continuous and vanishing at infinity. Sample times are stored as fractions
/// of the evaluation horizon and resolved to grid indices, so the functional
/// can be reused across horizons and step sizes.
struct TestFunctional {
    std::string name;
    std::vector<double> fractions;  ///< strictly increasing, in (0, 1]; empty = constant
    std::function<double(std::span<const double>)> f;

    double evaluate(std::span<const double> marginals) const { return f(marginals); }

    /// Grid indices of the sample times on a horizon with n_steps steps.
    /// Indices are clamped to [1, n_steps] and must stay strictly increasing.
    std::vector<std::size_t> marker_indices(std::size_t n_steps) const;
};

/// Z == 1 (normalization checks).
TestFunctional constant_one();

/// Functional of the horizon endpoint alone.
TestFunctional endpoint_functional(std::string name, std::function<double(double)> f);

/// The fixed functional suite used by every limit experiment: at most three
/// marginals, products of Gaussian-type bumps plus one heavy-tailed decay.
std::vector<TestFunctional> canonical_suite();

/// Sign-sensitive single-marginal functional for symmetry checks.
TestFunctional odd_functional();

}  // namespace levycond
