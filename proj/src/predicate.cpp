#include "ratelab/predicate.hpp"

#include <utility>

namespace ratelab {

const char* predicate_kind_name(PredicateKind kind) {
    switch (kind) {
        case PredicateKind::cauchy_partial_sums: return "cauchy_partial_sums";
        case PredicateKind::cauchy_f: return "cauchy_f";
        case PredicateKind::joint_abel: return "joint_abel";
        case PredicateKind::small_tail: return "small_tail";
        case PredicateKind::points_near_1: return "points_near_1";
    }
    throw error("unreachable");
}

PredicateKind predicate_kind_from_name(const std::string& name) {
    for (PredicateKind k :
         {PredicateKind::cauchy_partial_sums, PredicateKind::cauchy_f, PredicateKind::joint_abel,
          PredicateKind::small_tail, PredicateKind::points_near_1})
        if (name == predicate_kind_name(k)) return k;
    throw config_error("unknown predicate kind '" + name + "'");
}

struct WindowPredicate::Impl {
    PredicateKind kind;
    std::optional<CoefficientSequence> seq;
    std::optional<PointFamily> points;
    Rational eps;
    Rational threshold;
    FRoute route;     // as configured, for serialization
    bool certified = false;
    Rational delta;   // meaningful when certified

    // Decides exact vs certified F evaluation and the matching threshold.
    void resolve_route() {
        bool exact = seq->has_closed_form() && !route.force_certified;
        if (exact) {
            certified = false;
            threshold = eps;
            return;
        }
        certified = true;
        delta = route.delta ? *route.delta : Rational(eps / 8);
        if (delta <= 0) throw config_error("certified evaluation needs delta > 0");
        threshold = eps - 2 * delta;
        if (threshold <= 0)
            throw config_error("certified route leaves no comparison margin: eps = " +
                               format_rational(eps) + ", delta = " + format_rational(delta));
    }
};

WindowPredicate::WindowPredicate(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

namespace {

void require_positive_eps(const Rational& eps, const char* who) {
    if (eps <= 0) throw domain_error(std::string(who) + ": eps must be positive");
}

}  // namespace

WindowPredicate WindowPredicate::cauchy_partial_sums(CoefficientSequence seq, Rational eps) {
    require_positive_eps(eps, "cauchy_partial_sums");
    auto impl = std::make_shared<Impl>();
    impl->kind = PredicateKind::cauchy_partial_sums;
    impl->seq = std::move(seq);
    impl->eps = std::move(eps);
    impl->threshold = impl->eps;
    return WindowPredicate(std::move(impl));
}

WindowPredicate WindowPredicate::cauchy_f(CoefficientSequence seq, PointFamily points,
                                          Rational eps, FRoute route) {
    require_positive_eps(eps, "cauchy_f");
    auto impl = std::make_shared<Impl>();
    impl->kind = PredicateKind::cauchy_f;
    impl->seq = std::move(seq);
    impl->points = std::move(points);
    impl->eps = std::move(eps);
    impl->route = std::move(route);
    impl->resolve_route();
    return WindowPredicate(std::move(impl));
}

WindowPredicate WindowPredicate::joint_abel(CoefficientSequence seq, PointFamily points,
                                            Rational eps, FRoute route) {
    require_positive_eps(eps, "joint_abel");
    auto impl = std::make_shared<Impl>();
    impl->kind = PredicateKind::joint_abel;
    impl->seq = std::move(seq);
    impl->points = std::move(points);
    impl->eps = std::move(eps);
    impl->route = std::move(route);
    impl->resolve_route();
    return WindowPredicate(std::move(impl));
}

WindowPredicate WindowPredicate::small_tail(CoefficientSequence seq, Rational eps) {
    require_positive_eps(eps, "small_tail");
    auto impl = std::make_shared<Impl>();
    impl->kind = PredicateKind::small_tail;
    impl->seq = std::move(seq);
    impl->eps = std::move(eps);
    impl->threshold = impl->eps;
    return WindowPredicate(std::move(impl));
}

WindowPredicate WindowPredicate::points_near_1(PointFamily points, Rational eps) {
    require_positive_eps(eps, "points_near_1");
    auto impl = std::make_shared<Impl>();
    impl->kind = PredicateKind::points_near_1;
    impl->points = std::move(points);
    impl->eps = std::move(eps);
    impl->threshold = impl->eps;
    return WindowPredicate(std::move(impl));
}

PredicateKind WindowPredicate::kind() const { return impl_->kind; }

bool WindowPredicate::pairwise() const {
    return impl_->kind == PredicateKind::cauchy_partial_sums ||
           impl_->kind == PredicateKind::cauchy_f || impl_->kind == PredicateKind::joint_abel;
}

bool WindowPredicate::joint() const { return impl_->kind == PredicateKind::joint_abel; }

const Rational& WindowPredicate::eps() const { return impl_->eps; }
const Rational& WindowPredicate::threshold() const { return impl_->threshold; }
bool WindowPredicate::certified_route() const { return impl_->certified; }

Window WindowPredicate::clip(const Window& w) const {
    if (impl_->points) return impl_->points->clip(w);
    return w;
}

Rational WindowPredicate::value(const Nat& i, const ResourceLimits& limits) const {
    switch (impl_->kind) {
        case PredicateKind::cauchy_partial_sums:
            return impl_->seq->partial_sum(i, limits);
        case PredicateKind::cauchy_f:
        case PredicateKind::joint_abel: {
            Rational x = impl_->points->point(i);
            if (!impl_->certified) return impl_->seq->closed_form(x);
            Nat p = impl_->route.uniform_p ? *impl_->route.uniform_p : impl_->points->p_for(i);
            return eval_certified(*impl_->seq, EvalPoint(x, p), impl_->delta, limits,
                                  impl_->route.bound_override)
                .value;
        }
        case PredicateKind::small_tail:
            return Rational(Int(i)) * rat_abs(impl_->seq->term(i));
        case PredicateKind::points_near_1:
            return Rational(1) - impl_->points->point(i);
    }
    throw error("unreachable");
}

Rational WindowPredicate::joint_value(const Nat& n, const ResourceLimits& limits) const {
    if (!joint()) throw error("joint_value: predicate has no secondary stream");
    return impl_->seq->partial_sum(n, limits);
}

std::string WindowPredicate::describe() const {
    std::string out = predicate_kind_name(impl_->kind);
    out += "(";
    if (impl_->seq) out += impl_->seq->label() + ", ";
    if (impl_->points) out += impl_->points->label() + ", ";
    out += "eps=" + format_rational(impl_->eps);
    if (impl_->certified)
        out += ", certified delta=" + format_rational(impl_->delta) + ", threshold=" +
               format_rational(impl_->threshold);
    out += ")";
    return out;
}

bool WindowPredicate::serializable() const {
    return !impl_->seq || impl_->seq->serializable();
}

nlohmann::json WindowPredicate::descriptor() const {
    nlohmann::json j;
    j["kind"] = predicate_kind_name(impl_->kind);
    j["eps"] = format_rational(impl_->eps);
    if (impl_->seq) j["sequence"] = impl_->seq->descriptor();
    if (impl_->points) j["points"] = impl_->points->descriptor();
    if (impl_->kind == PredicateKind::cauchy_f || impl_->kind == PredicateKind::joint_abel) {
        nlohmann::json route;
        if (impl_->route.force_certified) route["force_certified"] = true;
        if (impl_->route.delta) route["delta"] = format_rational(*impl_->route.delta);
        if (impl_->route.bound_override)
            route["bound"] = format_rational(*impl_->route.bound_override);
        if (impl_->route.uniform_p) route["uniform_p"] = impl_->route.uniform_p->str();
        if (!route.empty()) j["route"] = route;
    }
    return j;
}

}  // namespace ratelab
