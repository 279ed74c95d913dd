#include "ratelab/points.hpp"

#include <utility>

namespace ratelab {

struct PointFamily::Impl {
    enum class Kind { v, dyadic, explicit_list } kind;
    std::vector<Rational> xs;  // explicit_list only
    std::string label;
};

PointFamily::PointFamily(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

PointFamily PointFamily::v() {
    auto impl = std::make_shared<Impl>();
    impl->kind = Impl::Kind::v;
    impl->label = "v";
    return PointFamily(std::move(impl));
}

PointFamily PointFamily::dyadic() {
    auto impl = std::make_shared<Impl>();
    impl->kind = Impl::Kind::dyadic;
    impl->label = "dyadic";
    return PointFamily(std::move(impl));
}

PointFamily PointFamily::explicit_list(std::vector<Rational> xs) {
    if (xs.empty()) throw config_error("explicit point family must not be empty");
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (xs[i] < 0 || xs[i] >= 1)
            throw config_error("explicit point x_" + std::to_string(i) + " = " +
                               format_rational(xs[i]) + " lies outside [0, 1)");
    auto impl = std::make_shared<Impl>();
    impl->kind = Impl::Kind::explicit_list;
    impl->xs = std::move(xs);
    impl->label = "explicit[" + std::to_string(impl->xs.size()) + "]";
    return PointFamily(std::move(impl));
}

Rational PointFamily::point(const Nat& m) const {
    if (m < domain_start())
        throw config_error("point family '" + impl_->label + "': index " + m.str() +
                           " is below the domain start " + domain_start().str());
    switch (impl_->kind) {
        case Impl::Kind::v:
            return Rational(1) - Rational(Int(1), Int(m));
        case Impl::Kind::dyadic:
            return Rational(1) - Rational(Int(1), Int(pow2_nat(m)));
        case Impl::Kind::explicit_list:
            if (m >= Nat(impl_->xs.size()))
                throw config_error("point family '" + impl_->label + "': index " + m.str() +
                                   " is past the end of the list");
            return impl_->xs[m.convert_to<std::size_t>()];
    }
    throw error("unreachable");
}

Nat PointFamily::domain_start() const {
    return impl_->kind == Impl::Kind::v ? Nat(1) : Nat(0);
}

std::optional<Nat> PointFamily::domain_end() const {
    if (impl_->kind == Impl::Kind::explicit_list) return Nat(impl_->xs.size() - 1);
    return std::nullopt;
}

Window PointFamily::clip(const Window& w) const {
    Window out = w;
    Nat start = domain_start();
    if (out.lo < start) out.lo = start;
    if (auto end = domain_end(); end && !out.empty() && out.hi > *end)
        throw config_error("point family '" + impl_->label + "': window [" + w.lo.str() + "; " +
                           w.hi.str() + "] runs past the last point " + end->str());
    return out;
}

Nat PointFamily::p_for(const Nat& m) const {
    switch (impl_->kind) {
        case Impl::Kind::v:
            if (m < 1)
                throw config_error("point family 'v': index " + m.str() +
                                   " is below the domain start 1");
            return m;
        case Impl::Kind::dyadic:
            return pow2_nat(m);
        case Impl::Kind::explicit_list: {
            Rational gap = Rational(1) - point(m);
            return ceil_rat_nat(Rational(1) / gap);
        }
    }
    throw error("unreachable");
}

Nat PointFamily::uniform_p(const Window& w) const {
    Window eff = clip(w);
    if (eff.empty()) return Nat(1);
    switch (impl_->kind) {
        case Impl::Kind::v:
        case Impl::Kind::dyadic:
            // 1 - x_m shrinks with m, so the last point decides.
            return p_for(eff.hi);
        case Impl::Kind::explicit_list: {
            Nat best(1);
            for (Nat m = eff.lo; m <= eff.hi; ++m) {
                Nat p = p_for(m);
                if (p > best) best = p;
            }
            return best;
        }
    }
    throw error("unreachable");
}

bool PointFamily::is_v() const { return impl_->kind == Impl::Kind::v; }

const std::string& PointFamily::label() const { return impl_->label; }

nlohmann::json PointFamily::descriptor() const {
    switch (impl_->kind) {
        case Impl::Kind::v:
            return {{"kind", "v"}};
        case Impl::Kind::dyadic:
            return {{"kind", "dyadic"}};
        case Impl::Kind::explicit_list: {
            nlohmann::json pts = nlohmann::json::array();
            for (const auto& x : impl_->xs) pts.push_back(format_rational(x));
            return {{"kind", "explicit"}, {"points", pts}};
        }
    }
    throw error("unreachable");
}

}  // namespace ratelab
