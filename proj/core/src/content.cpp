#include "fslab/content/content.hpp"

#include <cmath>
#include <string>
#include <type_traits>

#include "fslab/error.hpp"

namespace fslab {

namespace {

// Dyadic ancestors of S at levels 0..L, with parent links.
struct DyadicForest {
    std::vector<std::vector<CellIndex>> nodes;   // nodes[l] sorted
    std::vector<std::vector<std::size_t>> parent;  // parent[l][i] indexes nodes[l-1]
    std::vector<std::vector<std::size_t>> first_child;  // children of nodes[l][i]: [first_child[l][i], first_child[l][i+1])

    explicit DyadicForest(const GridSet1D& s) {
        int L = s.level().value();
        nodes.resize(L + 1);
        parent.resize(L + 1);
        first_child.resize(L + 1);
        nodes[L].assign(s.cells().begin(), s.cells().end());
        for (int l = L; l > 0; --l) {
            auto& up = nodes[l - 1];
            auto& link = parent[l];
            auto& fc = first_child[l - 1];
            link.resize(nodes[l].size());
            for (std::size_t i = 0; i < nodes[l].size(); ++i) {
                CellIndex a = floor_shift(nodes[l][i], 1);
                if (up.empty() || up.back() != a) {
                    up.push_back(a);
                    fc.push_back(i);
                }
                link[i] = up.size() - 1;
            }
            fc.push_back(nodes[l].size());
        }
    }

    int depth() const { return static_cast<int>(nodes.size()) - 1; }
};

struct ExactArith {
    PowerSumField field;
    using Value = PowerSum;
    Value zero() const { return field.zero(); }
    Value power(int level) const { return field.power(level); }
    static bool less(const Value& a, const Value& b) { return (a - b).sign() < 0; }
    static long double approx(const Value& v) { return v.to_long_double(); }
};

struct FloatArith {
    long double tau;
    using Value = long double;
    Value zero() const { return 0.0L; }
    Value power(int level) const { return std::exp2l(-tau * level); }
    // Strictly less beyond a relative guard of 1e-12.
    static bool less(Value a, Value b) { return a < b - 1e-12L * std::fabs(b); }
    static long double approx(Value v) { return v; }
};

template <class Arith>
ContentValue content_dp(const GridSet1D& s, const Arith& ar, Exponent tau) {
    using V = typename Arith::Value;
    DyadicForest f(s);
    int L = f.depth();
    std::vector<std::vector<V>> val(L + 1);
    std::vector<std::vector<char>> take_self(L + 1);
    for (int l = L; l >= 0; --l) {
        V pw = ar.power(l);
        std::size_t n = f.nodes[l].size();
        val[l].resize(n, ar.zero());
        take_self[l].assign(n, 1);
        if (l == L) {
            for (std::size_t i = 0; i < n; ++i) val[l][i] = pw;
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            V sum = ar.zero();
            for (std::size_t c = f.first_child[l][i]; c < f.first_child[l][i + 1]; ++c) sum += val[l + 1][c];
            if (Arith::less(sum, pw)) {
                val[l][i] = sum;
                take_self[l][i] = 0;
            } else {
                val[l][i] = pw;
            }
        }
    }

    ContentValue out;
    out.tau = tau;
    // Depth-first walk in index order yields the cover sorted by position.
    std::vector<std::pair<int, std::size_t>> stack;
    for (std::size_t i = f.nodes[0].size(); i-- > 0;) stack.emplace_back(0, i);
    V total = ar.zero();
    while (!stack.empty()) {
        auto [l, i] = stack.back();
        stack.pop_back();
        if (take_self[l][i]) {
            out.cover.push_back({l, f.nodes[l][i]});
            total += ar.power(l);
            continue;
        }
        for (std::size_t c = f.first_child[l][i + 1]; c-- > f.first_child[l][i];) stack.emplace_back(l + 1, c);
    }
    out.value = static_cast<double>(Arith::approx(total));
    if constexpr (std::is_same_v<V, PowerSum>) out.exact = total;
    return out;
}

template <class Arith>
FrostmanResult frostman(const GridSet1D& s, const Arith& ar) {
    using V = typename Arith::Value;
    DyadicForest f(s);
    int L = f.depth();
    FrostmanResult out;

    // Route 1: augment along each leaf-to-root path of the capacity tree.
    std::vector<std::vector<V>> residual(L + 1);
    for (int l = 0; l <= L; ++l) residual[l].assign(f.nodes[l].size(), ar.power(l));
    std::vector<std::pair<CellIndex, double>> flow_atoms;
    V flow_total = ar.zero();
    std::vector<std::size_t> path(L + 1);
    for (std::size_t leaf = 0; leaf < f.nodes[L].size(); ++leaf) {
        path[L] = leaf;
        for (int l = L; l > 0; --l) path[l - 1] = f.parent[l][path[l]];
        V push = residual[L][leaf];
        for (int l = L - 1; l >= 0; --l) {
            if (Arith::less(residual[l][path[l]], push)) push = residual[l][path[l]];
        }
        for (int l = L; l >= 0; --l) residual[l][path[l]] -= push;
        flow_total += push;
        double w = static_cast<double>(Arith::approx(push));
        if (w > 0.0) flow_atoms.emplace_back(f.nodes[L][leaf], w);
    }
    out.flow_measure = Measure1D(s.level(), std::move(flow_atoms));
    out.mass = static_cast<double>(Arith::approx(flow_total));
    if constexpr (std::is_same_v<V, PowerSum>) out.exact_mass = flow_total;

    // Route 2: bottom-up capacities, top-down proportional split.
    std::vector<std::vector<long double>> cap(L + 1);
    for (int l = L; l >= 0; --l) {
        long double pw = Arith::approx(ar.power(l));
        cap[l].assign(f.nodes[l].size(), pw);
        if (l == L) continue;
        for (std::size_t i = 0; i < cap[l].size(); ++i) {
            long double sum = 0.0L;
            for (std::size_t c = f.first_child[l][i]; c < f.first_child[l][i + 1]; ++c) sum += cap[l + 1][c];
            if (sum < pw) cap[l][i] = sum;
        }
    }
    std::vector<long double> mass = cap[0];
    for (int l = 0; l < L; ++l) {
        std::vector<long double> next(f.nodes[l + 1].size(), 0.0L);
        for (std::size_t i = 0; i < mass.size(); ++i) {
            long double sum = 0.0L;
            for (std::size_t c = f.first_child[l][i]; c < f.first_child[l][i + 1]; ++c) sum += cap[l + 1][c];
            for (std::size_t c = f.first_child[l][i]; c < f.first_child[l][i + 1]; ++c) {
                next[c] = mass[i] * (cap[l + 1][c] / sum);
            }
        }
        mass = std::move(next);
    }
    std::vector<std::pair<CellIndex, double>> atoms;
    for (std::size_t i = 0; i < mass.size(); ++i) atoms.emplace_back(f.nodes[L][i], static_cast<double>(mass[i]));
    out.measure = Measure1D(s.level(), std::move(atoms));
    return out;
}

void require_positive(Exponent tau) {
    if (!(tau.value() > 0.0)) throw Error("tau must be positive");
}

}  // namespace

bool exact_content_mode(Exponent tau, Level level) {
    auto fr = tau.fraction();
    return fr && PowerSumField::fits(fr->first, fr->second, level.value());
}

ContentValue dyadic_content(const GridSet1D& s, Exponent tau) {
    require_positive(tau);
    if (exact_content_mode(tau, s.level())) {
        auto [p, q] = *tau.fraction();
        ExactArith ar{PowerSumField(p, q, s.level().value())};
        if (s.empty()) {
            ContentValue v;
            v.tau = tau;
            v.exact = ar.zero();
            return v;
        }
        return content_dp(s, ar, tau);
    }
    if (s.empty()) {
        ContentValue v;
        v.tau = tau;
        return v;
    }
    return content_dp(s, FloatArith{static_cast<long double>(tau.value())}, tau);
}

FrostmanResult max_frostman(const GridSet1D& s, Exponent tau) {
    require_positive(tau);
    if (s.empty()) throw Error("max_frostman needs a nonempty set");
    if (exact_content_mode(tau, s.level())) {
        auto [p, q] = *tau.fraction();
        return frostman(s, ExactArith{PowerSumField(p, q, s.level().value())});
    }
    return frostman(s, FloatArith{static_cast<long double>(tau.value())});
}

}  // namespace fslab
