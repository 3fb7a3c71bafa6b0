#include "ulpa/skew_algebra.hpp"

#include "ulpa/error.hpp"

#include <stdexcept>

namespace ulpa {

DElement SkewRing::d_canonical(const DElement& f, std::size_t min_depth) const {
    std::vector<std::pair<Cylinder, Scalar>> items;
    std::vector<std::pair<Cylinder, Scalar>> work(f.begin(), f.end());
    while (!work.empty()) {
        auto [c, value] = std::move(work.back());
        work.pop_back();
        if (c.depth() >= min_depth || g_->is_sink(c.next)) {
            items.emplace_back(std::move(c), std::move(value));
        } else {
            for (auto& child : children(*g_, c)) work.emplace_back(std::move(child), value);
        }
    }
    auto family = disjointify(*g_, items, [this](const Scalar& a, const Scalar& b) { return ring_.add(a, b); });
    std::erase_if(family, [this](const auto& item) { return ring_.is_zero(item.second); });
    coarsen(*g_, family, min_depth, [](const Scalar& a, const Scalar& b) { return a == b; });
    return family;
}

DElement SkewRing::d_add(const DElement& f, const DElement& h) const {
    DElement out = f;
    for (const auto& [c, value] : h) {
        auto [it, fresh] = out.emplace(c, value);
        if (!fresh) it->second = ring_.add(it->second, value);
    }
    return d_canonical(out);
}

DElement SkewRing::d_scale(const Scalar& lambda, const DElement& f) const {
    DElement out;
    for (const auto& [c, value] : f) {
        Scalar v = ring_.mul(lambda, value);
        if (!ring_.is_zero(v)) out.emplace(c, std::move(v));
    }
    return out;
}

DElement SkewRing::d_multiply(const DElement& f, const DElement& h) const {
    std::vector<std::pair<Cylinder, Scalar>> items;
    for (const auto& [c1, v1] : f) {
        for (const auto& [c2, v2] : h) {
            if (is_within(*g_, c1, c2)) {
                items.emplace_back(c1, ring_.mul(v1, v2));
            } else if (is_within(*g_, c2, c1)) {
                items.emplace_back(c2, ring_.mul(v1, v2));
            }
        }
    }
    DElement out;
    for (auto& [c, v] : items) {
        auto [it, fresh] = out.emplace(c, v);
        if (!fresh) it->second = ring_.add(it->second, v);
    }
    return d_canonical(out);
}

bool SkewRing::d_is_zero(const DElement& f) const { return d_canonical(f).empty(); }

DElement SkewRing::indicator(const SetExpr& s) const {
    DElement out;
    const Scalar one = ring_.one();
    for (const auto& c : s.cylinders()) out.emplace(c, one);
    return out;
}

DElement SkewRing::beta_apply(const FreeWord& c, const DElement& f) const {
    const WordShape shape = admissible_shape(*g_, c);
    DElement out;
    for (const auto& [cyl, value] : f) {
        for (auto& image : theta_cylinder(*g_, shape, cyl)) {
            auto [it, fresh] = out.emplace(std::move(image), value);
            if (!fresh) it->second = ring_.add(it->second, value);
        }
    }
    return d_canonical(out);
}

GradedElement SkewRing::monomial(const FreeWord& t, DElement f) const {
    GradedElement x;
    x.emplace(t, std::move(f));
    return canonical(x);
}

GradedElement SkewRing::add(const GradedElement& x, const GradedElement& y) const {
    GradedElement out = x;
    for (const auto& [t, f] : y) {
        auto [it, fresh] = out.emplace(t, f);
        if (!fresh) {
            for (const auto& [c, v] : f) {
                auto [jt, fresh_c] = it->second.emplace(c, v);
                if (!fresh_c) jt->second = ring_.add(jt->second, v);
            }
        }
    }
    return canonical(out);
}

GradedElement SkewRing::neg(const GradedElement& x) const { return scale(ring_.neg(ring_.one()), x); }

GradedElement SkewRing::sub(const GradedElement& x, const GradedElement& y) const { return add(x, neg(y)); }

GradedElement SkewRing::scale(const Scalar& lambda, const GradedElement& x) const {
    GradedElement out;
    for (const auto& [t, f] : x) {
        DElement scaled = d_scale(ring_.normalize(lambda), f);
        if (!scaled.empty()) out.emplace(t, std::move(scaled));
    }
    return canonical(out);
}

GradedElement SkewRing::multiply(const GradedElement& x, const GradedElement& y) const {
    GradedElement out;
    for (const auto& [s, f] : x) {
        const FreeWord s_inv = s.inverse();
        const DElement pulled = beta_apply(s_inv, f);
        for (const auto& [t, h] : y) {
            DElement product = d_multiply(pulled, h);
            if (product.empty()) continue;
            DElement pushed = beta_apply(s, product);
            if (pushed.empty()) continue;
            FreeWord st = s * t;
            if (!word_admissible(*g_, st)) {
                throw std::logic_error("nonzero product component on an inadmissible word");
            }
            auto& slot = out[st];
            for (const auto& [c, v] : pushed) {
                auto [it, fresh] = slot.emplace(c, v);
                if (!fresh) it->second = ring_.add(it->second, v);
            }
        }
    }
    return canonical(out);
}

GradedElement SkewRing::canonical(const GradedElement& x) const {
    GradedElement out;
    for (const auto& [t, f] : x) {
        if (!word_admissible(*g_, t)) {
            if (!d_is_zero(f)) throw Error(ErrorKind::InadmissibleWord, "component on inadmissible word " + ulpa::to_string(*g_, t));
            continue;
        }
        DElement c = d_canonical(f, word_shape(t)->a.size());
        if (!c.empty()) out.emplace(t, std::move(c));
    }
    return out;
}

bool SkewRing::is_zero(const GradedElement& x) const { return canonical(x).empty(); }

bool SkewRing::equal(const GradedElement& x, const GradedElement& y) const { return is_zero(sub(x, y)); }

bool SkewRing::supported_in_ideals(const GradedElement& x) const {
    for (const auto& [t, f] : x) {
        if (!word_admissible(*g_, t)) return false;
        const SetExpr domain = x_set(*g_, t);
        for (const auto& [c, v] : f) {
            bool inside = false;
            for (const auto& d : domain.cylinders()) inside = inside || is_within(*g_, c, d);
            if (!inside) return false;
        }
    }
    return true;
}

std::string SkewRing::to_string(const DElement& f, const FreeWord& t) const {
    std::string out;
    for (const auto& [c, v] : f) {
        if (!out.empty()) out += " + ";
        out += Ring::to_string(v) + "·" + ulpa::to_string(*g_, c) + "δ_{" + ulpa::to_string(*g_, t) + "}";
    }
    return out;
}

std::string SkewRing::to_string(const GradedElement& x) const {
    if (x.empty()) return "0";
    std::string out;
    for (const auto& [t, f] : x) {
        if (f.empty()) continue;
        if (!out.empty()) out += " + ";
        out += to_string(f, t);
    }
    return out.empty() ? "0" : out;
}

DElement beta_apply(const SkewRing& k, const FreeWord& c, const DElement& f) { return k.beta_apply(c, f); }

GradedElement graded_multiply(const SkewRing& k, const GradedElement& x, const GradedElement& y) {
    return k.multiply(x, y);
}

bool graded_is_zero(const SkewRing& k, const GradedElement& x) { return k.is_zero(x); }

std::vector<std::pair<FreeWord, DElement>> homogeneous_components(const SkewRing& k, const GradedElement& x) {
    const GradedElement c = k.canonical(x);
    return {c.begin(), c.end()};
}

}  // namespace ulpa
