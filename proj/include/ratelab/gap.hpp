#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ratelab/numbers.hpp"

namespace ratelab {

// Total function N -> N used as a metastability challenge. The serializable
// expression family (constant, linear, polynomial, max, compose, table) is
// closed under the operations the rate pipelines need; every member except
// `table` is monotone nondecreasing, which the iterated bounds rely on.
// `opaque` wraps an arbitrary callable for tests and derived challenges; it
// refuses serialization.
class GapFunction {
public:
    static GapFunction constant(Nat c);
    static GapFunction linear(Nat a, Nat b);                  // n -> a*n + b
    static GapFunction polynomial(std::vector<Nat> coeffs);   // n -> sum_j coeffs[j] * n^j
    static GapFunction max_of(std::vector<GapFunction> args);
    static GapFunction compose(GapFunction outer, GapFunction inner);
    static GapFunction table(std::vector<Nat> values, Nat fallback);
    static GapFunction opaque(std::function<Nat(const Nat&)> fn, std::string label);

    Nat operator()(const Nat& n) const;

    bool serializable() const;
    std::string describe() const;

    nlohmann::json to_json() const;  // throws config_error for opaque gaps
    static GapFunction from_json(const nlohmann::json& j);

private:
    struct Node;
    explicit GapFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

}  // namespace ratelab
