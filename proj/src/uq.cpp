#include "qcl/uq.hpp"

#include <sstream>

#include "qcl/errors.hpp"

namespace qcl {

bool gen::operator<(const gen& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (idx != o.idx) return idx < o.idx;
    return lam < o.lam;
}

namespace {

bool zero_weight(const weight& w) {
    for (int x : w)
        if (x) return false;
    return true;
}

// concatenate with adjacent-K merging
word join(const word& a, const word& b) {
    word r = a;
    for (const auto& g : b) {
        if (g.kind == gen::K && !r.empty() && r.back().kind == gen::K) {
            r.back().lam = r.back().lam + g.lam;
            if (zero_weight(r.back().lam)) r.pop_back();
        } else if (g.kind == gen::K && zero_weight(g.lam)) {
            continue;
        } else {
            r.push_back(g);
        }
    }
    return r;
}

}  // namespace

element::element(const scalar& c) {
    if (!c.is_zero()) t_[word{}] = c;
}

element element::of(gen g) {
    element x;
    x.add_term(join({}, {std::move(g)}), scalar(1));
    return x;
}

void element::add_term(word w, const scalar& c) {
    if (c.is_zero()) return;
    auto it = t_.find(w);
    if (it == t_.end()) {
        t_.emplace(std::move(w), c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
}

element& element::operator+=(const element& o) {
    for (const auto& [w, c] : o.t_) add_term(w, c);
    return *this;
}

element element::operator+(const element& o) const {
    element r = *this;
    r += o;
    return r;
}

element element::operator-() const {
    element r;
    for (const auto& [w, c] : t_) r.t_.emplace(w, -c);
    return r;
}

element element::operator-(const element& o) const { return *this + (-o); }

element element::operator*(const element& o) const {
    element r;
    for (const auto& [a, x] : t_)
        for (const auto& [b, y] : o.t_) r.add_term(join(a, b), x * y);
    return r;
}

element element::scaled(const scalar& s) const {
    element r;
    if (s.is_zero()) return r;
    for (const auto& [w, c] : t_) r.t_.emplace(w, c * s);
    return r;
}

element element::pow(int n) const {
    element r(scalar(1));
    for (int k = 0; k < n; ++k) r = r * *this;
    return r;
}

element operator*(const scalar& s, const element& x) { return x.scaled(s); }

void tensor_element::add_term(word a, word b, const scalar& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(std::move(a), std::move(b));
    auto it = t_.find(key);
    if (it == t_.end()) {
        t_.emplace(std::move(key), c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
}

tensor_element tensor_element::operator*(const tensor_element& o) const {
    tensor_element r;
    for (const auto& [k1, x] : t_)
        for (const auto& [k2, y] : o.t_)
            r.add_term(join(k1.first, k2.first), join(k1.second, k2.second), x * y);
    return r;
}

tensor_element tensor_element::operator+(const tensor_element& o) const {
    tensor_element r = *this;
    for (const auto& [k, c] : o.t_) r.add_term(k.first, k.second, c);
    return r;
}

tensor_element tensor_element::one() {
    tensor_element t;
    t.add_term({}, {}, scalar(1));
    return t;
}

// ---------------------------------------------------------------------------

tensor_element uq::coproduct(const element& x) const {
    tensor_element out;
    for (const auto& [w, c] : x.terms()) {
        tensor_element acc = tensor_element::one();
        for (const auto& g : w) {
            tensor_element d;
            if (g.kind == gen::E) {
                d.add_term({g}, {}, scalar(1));
                d.add_term({gen::k(rs_->simple_root(g.idx))}, {g}, scalar(1));
            } else if (g.kind == gen::F) {
                d.add_term({g}, {gen::k(-rs_->simple_root(g.idx))}, scalar(1));
                d.add_term({}, {g}, scalar(1));
            } else {
                d.add_term({g}, {g}, scalar(1));
            }
            acc = acc * d;
        }
        for (const auto& [k, y] : acc.terms()) out.add_term(k.first, k.second, y * c);
    }
    return out;
}

element uq::antipode_gen(const gen& g) const {
    switch (g.kind) {
        case gen::E: return -(Kj(g.idx, -1) * element::of(g));
        case gen::F: return -(element::of(g) * Kj(g.idx));
        default: return element::k(-g.lam);
    }
}

element uq::antipode_inv_gen(const gen& g) const {
    switch (g.kind) {
        case gen::E: return -(element::of(g) * Kj(g.idx, -1));
        case gen::F: return -(Kj(g.idx) * element::of(g));
        default: return element::k(-g.lam);
    }
}

element uq::antipode(const element& x) const {
    element out;
    for (const auto& [w, c] : x.terms()) {
        element acc(scalar(1));
        for (auto it = w.rbegin(); it != w.rend(); ++it) acc = acc * antipode_gen(*it);
        out += acc.scaled(c);
    }
    return out;
}

element uq::antipode_inverse(const element& x) const {
    element out;
    for (const auto& [w, c] : x.terms()) {
        element acc(scalar(1));
        for (auto it = w.rbegin(); it != w.rend(); ++it) acc = acc * antipode_inv_gen(*it);
        out += acc.scaled(c);
    }
    return out;
}

scalar uq::counit(const element& x) const {
    scalar s;
    for (const auto& [w, c] : x.terms()) {
        bool only_k = true;
        for (const auto& g : w)
            if (g.kind != gen::K) only_k = false;
        if (only_k) s += c;
    }
    return s;
}

element uq::star(const element& x) const {
    element out;
    for (const auto& [w, c] : x.terms()) {
        element acc(scalar(1));
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            const gen& g = *it;
            if (g.kind == gen::E)
                acc = acc * (Kj(g.idx) * element::f(g.idx));
            else if (g.kind == gen::F)
                acc = acc * (element::e(g.idx) * Kj(g.idx, -1));
            else
                acc = acc * element::of(g);
        }
        out += acc.scaled(c);
    }
    return out;
}

element uq::divided_power(gen::kind_t k, int i, int n) const {
    element g = element::of(gen{k, i, {}});
    return g.pow(n).scaled(ctx_.qfact(n, rs_->d(i)).inv());
}

element uq::braid_gen(int i, const gen& g) const {
    if (g.kind == gen::K) return element::k(rs_->reflect(i, g.lam));
    const int j = g.idx;
    if (j == i) {
        if (g.kind == gen::E) return -(element::f(i) * Kj(i));
        return -(Kj(i, -1) * element::e(i));
    }
    const int r = -rs_->cartan(i, j);
    const long di = rs_->d(i);
    element out;
    for (int k = 0; k <= r; ++k) {
        const scalar sign((k + r) % 2 ? -1 : 1);
        if (g.kind == gen::E) {
            element t = divided_power(gen::E, i, r - k) * element::e(j) * divided_power(gen::E, i, k);
            out += t.scaled(sign * ctx_.qpow(-k * di));
        } else {
            element t = divided_power(gen::F, i, k) * element::f(j) * divided_power(gen::F, i, r - k);
            out += t.scaled(sign * ctx_.qpow(k * di));
        }
    }
    return out;
}

element uq::braid(int i, const element& x) const {
    element out;
    std::map<gen, element> memo;
    for (const auto& [w, c] : x.terms()) {
        element acc(scalar(1));
        for (const auto& g : w) {
            auto it = memo.find(g);
            if (it == memo.end()) it = memo.emplace(g, braid_gen(i, g)).first;
            acc = acc * it->second;
        }
        out += acc.scaled(c);
    }
    return out;
}

element uq::braid_word(const std::vector<int>& w, const element& x) const {
    element r = x;
    for (size_t k = w.size(); k-- > 0;) r = braid(w[k], r);
    return r;
}

std::vector<element> uq::root_vectors_e(const std::vector<int>& w) const {
    word_roots(*rs_, w);  // NotReduced check
    std::vector<element> out;
    for (size_t k = 0; k < w.size(); ++k)
        out.push_back(braid_word(std::vector<int>(w.begin(), w.begin() + k), element::e(w[k])));
    return out;
}

std::vector<element> uq::root_vectors_f(const std::vector<int>& w) const {
    word_roots(*rs_, w);
    std::vector<element> out;
    for (size_t k = 0; k < w.size(); ++k)
        out.push_back(braid_word(std::vector<int>(w.begin(), w.begin() + k), element::f(w[k])));
    return out;
}

element uq::adjoint(const element& x, const element& a) const {
    element out;
    const tensor_element dx = coproduct(x);
    for (const auto& [k, c] : dx.terms()) {
        element x1, x2;
        x1.add_term(k.first, scalar(1));
        x2.add_term(k.second, scalar(1));
        out += (x1 * a * antipode(x2)).scaled(c);
    }
    return out;
}

std::vector<std::pair<std::string, element>> uq::relations() const {
    std::vector<std::pair<std::string, element>> out;
    const int n = rs_->rank();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            element c = element::e(i) * element::f(j) - element::f(j) * element::e(i);
            if (i == j) {
                const long di = rs_->d(i);
                scalar den = ctx_.qpow(di) - ctx_.qpow(-di);
                c = c - (Kj(i) - Kj(i, -1)).scaled(den.inv());
            }
            out.emplace_back("[E" + std::to_string(i + 1) + ",F" + std::to_string(j + 1) + "]", c);
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const weight w = rs_->fundamental(i);
            const scalar qe = rs_->qform(w, rs_->simple_root(j));
            out.emplace_back("K E", element::k(w) * element::e(j) * element::k(-w) - element::e(j).scaled(qe));
            out.emplace_back("K F", element::k(w) * element::f(j) * element::k(-w) - element::f(j).scaled(qe.inv()));
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const int m = 1 - rs_->cartan(i, j);
            element se, sf;
            for (int k = 0; k <= m; ++k) {
                scalar c = ctx_.qbinom(m, k, rs_->d(i));
                if (k % 2) c = -c;
                se += (element::e(i).pow(m - k) * element::e(j) * element::e(i).pow(k)).scaled(c);
                sf += (element::f(i).pow(m - k) * element::f(j) * element::f(i).pow(k)).scaled(c);
            }
            out.emplace_back("Serre E" + std::to_string(i + 1) + std::to_string(j + 1), se);
            out.emplace_back("Serre F" + std::to_string(i + 1) + std::to_string(j + 1), sf);
        }
    return out;
}

std::string uq::render(const element& x) const {
    if (x.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : x.terms()) {
        std::string cs = ctx_.pretty(c);
        const bool sum = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
        bool neg = false;
        if (cs[0] == '-' && !sum && cs.find('/') == std::string::npos) {
            neg = true;
            cs = cs.substr(1);
        }
        if (sum || (cs.find('/') != std::string::npos && cs[0] != '(')) cs = "(" + cs + ")";
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        first = false;
        std::string ws;
        for (const auto& g : w) {
            if (!ws.empty()) ws += "*";
            if (g.kind == gen::K)
                ws += "K" + weight_str(g.lam);
            else
                ws += std::string(1, static_cast<char>(g.kind)) + std::to_string(g.idx + 1);
        }
        if (ws.empty())
            os << cs;
        else if (cs == "1")
            os << ws;
        else
            os << cs << "*" << ws;
    }
    return os.str();
}

}  // namespace qcl
