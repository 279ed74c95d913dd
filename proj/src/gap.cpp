#include "ratelab/gap.hpp"

#include <utility>
#include <variant>

#include "ratelab/json_util.hpp"

namespace ratelab {

namespace {

struct ConstantNode {
    Nat c;
};
struct LinearNode {
    Nat a, b;
};
struct PolyNode {
    std::vector<Nat> coeffs;
};
struct MaxNode {
    std::vector<GapFunction> args;
};
struct ComposeNode {
    std::unique_ptr<GapFunction> outer, inner;
};
struct TableNode {
    std::vector<Nat> values;
    Nat fallback;
};
struct OpaqueNode {
    std::function<Nat(const Nat&)> fn;
    std::string label;
};

Nat require_nat(const nlohmann::json& j, const char* key) {
    if (!j.contains(key))
        throw config_error(std::string("gap descriptor missing natural field '") + key + "'");
    return nat_from_json(j.at(key), std::string("gap field '") + key + "'");
}

}  // namespace

struct GapFunction::Node {
    std::variant<ConstantNode, LinearNode, PolyNode, MaxNode, ComposeNode, TableNode, OpaqueNode>
        v;
};

GapFunction GapFunction::constant(Nat c) {
    return GapFunction(std::make_shared<const Node>(Node{ConstantNode{std::move(c)}}));
}

GapFunction GapFunction::linear(Nat a, Nat b) {
    return GapFunction(std::make_shared<const Node>(Node{LinearNode{std::move(a), std::move(b)}}));
}

GapFunction GapFunction::polynomial(std::vector<Nat> coeffs) {
    return GapFunction(std::make_shared<const Node>(Node{PolyNode{std::move(coeffs)}}));
}

GapFunction GapFunction::max_of(std::vector<GapFunction> args) {
    if (args.empty()) throw config_error("gap max: needs at least one argument");
    return GapFunction(std::make_shared<const Node>(Node{MaxNode{std::move(args)}}));
}

GapFunction GapFunction::compose(GapFunction outer, GapFunction inner) {
    return GapFunction(std::make_shared<const Node>(
        Node{ComposeNode{std::make_unique<GapFunction>(std::move(outer)),
                         std::make_unique<GapFunction>(std::move(inner))}}));
}

GapFunction GapFunction::table(std::vector<Nat> values, Nat fallback) {
    return GapFunction(
        std::make_shared<const Node>(Node{TableNode{std::move(values), std::move(fallback)}}));
}

GapFunction GapFunction::opaque(std::function<Nat(const Nat&)> fn, std::string label) {
    return GapFunction(
        std::make_shared<const Node>(Node{OpaqueNode{std::move(fn), std::move(label)}}));
}

Nat GapFunction::operator()(const Nat& n) const {
    if (n < 0) throw domain_error("gap: negative argument");
    const auto& v = node_->v;
    if (const auto* c = std::get_if<ConstantNode>(&v)) return c->c;
    if (const auto* l = std::get_if<LinearNode>(&v)) return l->a * n + l->b;
    if (const auto* p = std::get_if<PolyNode>(&v)) {
        Nat acc = 0;
        Nat power = 1;
        for (std::size_t j = 0; j < p->coeffs.size(); ++j) {
            if (j > 0) power *= n;
            acc += p->coeffs[j] * power;
        }
        return acc;
    }
    if (const auto* m = std::get_if<MaxNode>(&v)) {
        Nat best = m->args.front()(n);
        for (std::size_t i = 1; i < m->args.size(); ++i) {
            Nat cur = m->args[i](n);
            if (cur > best) best = cur;
        }
        return best;
    }
    if (const auto* c = std::get_if<ComposeNode>(&v)) return (*c->outer)((*c->inner)(n));
    if (const auto* t = std::get_if<TableNode>(&v)) {
        if (n < Nat(t->values.size())) return t->values[n.convert_to<std::size_t>()];
        return t->fallback;
    }
    const auto& o = std::get<OpaqueNode>(v);
    Nat result = o.fn(n);
    if (result < 0) throw domain_error("gap '" + o.label + "': produced a negative value");
    return result;
}

bool GapFunction::serializable() const {
    const auto& v = node_->v;
    if (std::holds_alternative<OpaqueNode>(v)) return false;
    if (const auto* m = std::get_if<MaxNode>(&v)) {
        for (const auto& a : m->args)
            if (!a.serializable()) return false;
        return true;
    }
    if (const auto* c = std::get_if<ComposeNode>(&v))
        return c->outer->serializable() && c->inner->serializable();
    return true;
}

std::string GapFunction::describe() const {
    const auto& v = node_->v;
    if (const auto* c = std::get_if<ConstantNode>(&v)) return "constant(" + c->c.str() + ")";
    if (const auto* l = std::get_if<LinearNode>(&v))
        return l->a.str() + "n+" + l->b.str();
    if (const auto* p = std::get_if<PolyNode>(&v)) {
        std::string s = "poly(";
        for (std::size_t j = 0; j < p->coeffs.size(); ++j) {
            if (j) s += ",";
            s += p->coeffs[j].str();
        }
        return s + ")";
    }
    if (const auto* m = std::get_if<MaxNode>(&v)) {
        std::string s = "max(";
        for (std::size_t i = 0; i < m->args.size(); ++i) {
            if (i) s += ",";
            s += m->args[i].describe();
        }
        return s + ")";
    }
    if (const auto* c = std::get_if<ComposeNode>(&v))
        return c->outer->describe() + " . " + c->inner->describe();
    if (const auto* t = std::get_if<TableNode>(&v))
        return "table[" + std::to_string(t->values.size()) + "]";
    return "opaque(" + std::get<OpaqueNode>(v).label + ")";
}

nlohmann::json GapFunction::to_json() const {
    const auto& v = node_->v;
    if (const auto* c = std::get_if<ConstantNode>(&v))
        return {{"kind", "constant"}, {"c", c->c.str()}};
    if (const auto* l = std::get_if<LinearNode>(&v))
        return {{"kind", "linear"}, {"a", l->a.str()}, {"b", l->b.str()}};
    if (const auto* p = std::get_if<PolyNode>(&v)) {
        nlohmann::json coeffs = nlohmann::json::array();
        for (const auto& c : p->coeffs) coeffs.push_back(c.str());
        return {{"kind", "poly"}, {"coeffs", coeffs}};
    }
    if (const auto* m = std::get_if<MaxNode>(&v)) {
        nlohmann::json args = nlohmann::json::array();
        for (const auto& a : m->args) args.push_back(a.to_json());
        return {{"kind", "max"}, {"args", args}};
    }
    if (const auto* c = std::get_if<ComposeNode>(&v))
        return {{"kind", "compose"}, {"outer", c->outer->to_json()}, {"inner", c->inner->to_json()}};
    if (const auto* t = std::get_if<TableNode>(&v)) {
        nlohmann::json values = nlohmann::json::array();
        for (const auto& x : t->values) values.push_back(x.str());
        return {{"kind", "table"}, {"values", values}, {"default", t->fallback.str()}};
    }
    throw config_error("gap '" + std::get<OpaqueNode>(v).label + "' is not serializable");
}

GapFunction GapFunction::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw config_error("gap descriptor must be an object with a string 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") return constant(require_nat(j, "c"));
    if (kind == "linear") return linear(require_nat(j, "a"), require_nat(j, "b"));
    if (kind == "poly") {
        if (!j.contains("coeffs") || !j.at("coeffs").is_array())
            throw config_error("poly gap needs a 'coeffs' array");
        std::vector<Nat> coeffs;
        for (const auto& c : j.at("coeffs")) coeffs.push_back(nat_from_json(c, "poly gap coefficient"));
        return polynomial(std::move(coeffs));
    }
    if (kind == "max") {
        if (!j.contains("args") || !j.at("args").is_array() || j.at("args").empty())
            throw config_error("max gap needs a non-empty 'args' array");
        std::vector<GapFunction> args;
        for (const auto& a : j.at("args")) args.push_back(from_json(a));
        return max_of(std::move(args));
    }
    if (kind == "compose") {
        if (!j.contains("outer") || !j.contains("inner"))
            throw config_error("compose gap needs 'outer' and 'inner'");
        return compose(from_json(j.at("outer")), from_json(j.at("inner")));
    }
    if (kind == "table") {
        if (!j.contains("values") || !j.at("values").is_array())
            throw config_error("table gap needs a 'values' array");
        std::vector<Nat> values;
        for (const auto& x : j.at("values")) values.push_back(nat_from_json(x, "table gap value"));
        Nat fallback =
            j.contains("default") ? nat_from_json(j.at("default"), "table gap default") : Nat(0);
        return table(std::move(values), std::move(fallback));
    }
    throw config_error("unknown gap kind '" + kind + "'");
}

}  // namespace ratelab
