#include "fslab/measures/operations.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>
#include <unordered_map>

#include "fslab/error.hpp"

namespace fslab {

namespace {

constexpr double kProbabilityTol = 1e-10;

CellIndex ancestor(CellIndex k, int shift) { return floor_shift(k, shift); }
Cell2 ancestor(Cell2 c, int shift) { return {floor_shift(c.x, shift), floor_shift(c.y, shift)}; }

template <class Cell>
void require_probability(const DeltaMeasure<Cell>& mu) {
    if (!mu.is_probability(kProbabilityTol)) {
        throw Error("entropy requires a probability measure (mass " + std::to_string(mu.total_mass()) + ")");
    }
}

void require_level_order(Level coarse, Level fine, const char* what) {
    if (coarse > fine) throw Error(std::string(what) + ": level " + std::to_string(coarse.value()) +
                                   " is finer than " + std::to_string(fine.value()));
}

// Masses of the level-`target` cells, keyed by cell, in cell order.
template <class Cell>
std::vector<std::pair<Cell, double>> masses_at(const DeltaMeasure<Cell>& mu, Level target) {
    require_level_order(target, mu.level(), "entropy");
    int shift = mu.level().value() - target.value();
    std::vector<std::pair<Cell, double>> v;
    v.reserve(mu.size());
    for (const auto& [c, w] : mu.atoms()) v.emplace_back(ancestor(c, shift), w);
    std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<Cell, double>> out;
    for (const auto& [c, w] : v) {
        if (!out.empty() && out.back().first == c) {
            out.back().second += w;
        } else {
            out.emplace_back(c, w);
        }
    }
    return out;
}

double plogp_sum(const std::vector<double>& ps) {
    double h = 0.0;
    for (double p : ps) {
        if (p > 0.0) h -= p * std::log2(p);
    }
    return h;
}

template <class Cell>
double entropy_impl(const DeltaMeasure<Cell>& mu, Level target) {
    require_probability(mu);
    std::vector<double> ps;
    for (const auto& a : masses_at(mu, target)) ps.push_back(a.second);
    return std::max(0.0, plogp_sum(ps));
}

template <class Cell>
double conditional_entropy_impl(const DeltaMeasure<Cell>& mu, Level fine, Level coarse) {
    require_probability(mu);
    require_level_order(coarse, fine, "conditional_entropy");
    auto fine_masses = masses_at(mu, fine);
    int shift = fine.value() - coarse.value();
    // Group fine cells under their coarse parent.
    std::vector<std::pair<Cell, double>> keyed;
    keyed.reserve(fine_masses.size());
    for (const auto& [c, w] : fine_masses) keyed.emplace_back(ancestor(c, shift), w);
    std::vector<std::size_t> order(keyed.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keyed[a].first < keyed[b].first; });

    double total = 0.0;
    std::vector<double> local;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        double mass_e = 0.0;
        while (j < order.size() && keyed[order[j]].first == keyed[order[i]].first) mass_e += keyed[order[j++]].second;
        local.clear();
        for (std::size_t t = i; t < j; ++t) local.push_back(keyed[order[t]].second / mass_e);
        total += mass_e * plogp_sum(local);
        i = j;
    }
    return std::max(0.0, total);
}

bool in_set(CellIndex k, const GridSet1D& s, int shift) { return s.contains(ancestor(k, shift)); }
bool in_set(Cell2 c, const GridSet2D& s, int shift) { return s.contains(ancestor(c, shift)); }

template <class Cell, class Set>
double mass_on_impl(const DeltaMeasure<Cell>& mu, const Set& s) {
    require_level_order(s.level(), mu.level(), "restriction");
    int shift = mu.level().value() - s.level().value();
    double m = 0.0;
    for (const auto& [c, w] : mu.atoms()) {
        if (in_set(c, s, shift)) m += w;
    }
    return m;
}

template <class Cell, class Set>
DeltaMeasure<Cell> restrict_impl(const DeltaMeasure<Cell>& mu, const Set& s) {
    double m = mass_on_impl(mu, s);
    if (m <= 0.0) throw Error("restriction to null set");
    int shift = mu.level().value() - s.level().value();
    std::vector<std::pair<Cell, double>> atoms;
    for (const auto& [c, w] : mu.atoms()) {
        if (in_set(c, s, shift)) atoms.emplace_back(c, w / m);
    }
    return DeltaMeasure<Cell>(mu.level(), std::move(atoms));
}

constexpr std::size_t kDenseLimit = std::size_t{1} << 24;

Measure1D convolve_direct(const Measure1D& mu, const Measure1D& nu) {
    CellIndex lo = mu.atoms().front().first + nu.atoms().front().first;
    CellIndex hi = mu.atoms().back().first + nu.atoms().back().first;
    std::vector<Measure1D::Atom> out;
    auto span = static_cast<std::size_t>(hi - lo + 1);
    if (span <= kDenseLimit) {
        std::vector<double> acc(span, 0.0);
        for (const auto& [x, wx] : mu.atoms()) {
            for (const auto& [y, wy] : nu.atoms()) acc[static_cast<std::size_t>(x + y - lo)] += wx * wy;
        }
        for (std::size_t i = 0; i < span; ++i) {
            if (acc[i] > 0.0) out.emplace_back(lo + static_cast<CellIndex>(i), acc[i]);
        }
    } else {
        std::unordered_map<CellIndex, double> acc;
        for (const auto& [x, wx] : mu.atoms()) {
            for (const auto& [y, wy] : nu.atoms()) acc[x + y] += wx * wy;
        }
        out.assign(acc.begin(), acc.end());
    }
    return Measure1D(mu.level(), std::move(out));
}

std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

Measure1D convolve_fft(const Measure1D& mu, const Measure1D& nu) {
    CellIndex mu_lo = mu.atoms().front().first;
    CellIndex nu_lo = nu.atoms().front().first;
    auto mu_span = static_cast<std::size_t>(mu.atoms().back().first - mu_lo + 1);
    auto nu_span = static_cast<std::size_t>(nu.atoms().back().first - nu_lo + 1);
    std::size_t n = mu_span + nu_span - 1;
    if (n > kDenseLimit * 4) throw Error("support span too wide for dense convolution");

    std::size_t nc = n / 2 + 1;
    double* a = fftw_alloc_real(n);
    double* b = fftw_alloc_real(n);
    fftw_complex* fa = fftw_alloc_complex(nc);
    fftw_complex* fb = fftw_alloc_complex(nc);
    std::fill(a, a + n, 0.0);
    std::fill(b, b + n, 0.0);
    for (const auto& [x, w] : mu.atoms()) a[x - mu_lo] = w;
    for (const auto& [y, w] : nu.atoms()) b[y - nu_lo] = w;

    fftw_plan pa, pb, pc;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        int ni = static_cast<int>(n);
        pa = fftw_plan_dft_r2c_1d(ni, a, fa, FFTW_ESTIMATE);
        pb = fftw_plan_dft_r2c_1d(ni, b, fb, FFTW_ESTIMATE);
        pc = fftw_plan_dft_c2r_1d(ni, fa, a, FFTW_ESTIMATE);
    }
    fftw_execute(pa);
    fftw_execute(pb);
    for (std::size_t i = 0; i < nc; ++i) {
        double re = fa[i][0] * fb[i][0] - fa[i][1] * fb[i][1];
        double im = fa[i][0] * fb[i][1] + fa[i][1] * fb[i][0];
        fa[i][0] = re;
        fa[i][1] = im;
    }
    fftw_execute(pc);

    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        a[i] /= static_cast<double>(n);
        peak = std::max(peak, a[i]);
    }
    std::vector<Measure1D::Atom> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] > 1e-14 * peak) out.emplace_back(mu_lo + nu_lo + static_cast<CellIndex>(i), a[i]);
    }
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(pa);
        fftw_destroy_plan(pb);
        fftw_destroy_plan(pc);
    }
    fftw_free(a);
    fftw_free(b);
    fftw_free(fa);
    fftw_free(fb);
    return Measure1D(mu.level(), std::move(out));
}

}  // namespace

double entropy(const Measure1D& mu, Level target) { return entropy_impl(mu, target); }
double entropy(const Measure2D& mu, Level target) { return entropy_impl(mu, target); }

double conditional_entropy(const Measure1D& mu, Level fine, Level coarse) {
    return conditional_entropy_impl(mu, fine, coarse);
}
double conditional_entropy(const Measure2D& mu, Level fine, Level coarse) {
    return conditional_entropy_impl(mu, fine, coarse);
}

Measure1D restrict_normalize(const Measure1D& mu, const GridSet1D& s) { return restrict_impl(mu, s); }
Measure2D restrict_normalize(const Measure2D& mu, const GridSet2D& s) { return restrict_impl(mu, s); }

double mass_on(const Measure1D& mu, const GridSet1D& s) { return mass_on_impl(mu, s); }
double mass_on(const Measure2D& mu, const GridSet2D& s) { return mass_on_impl(mu, s); }

double l2_norm(const Measure1D& mu) {
    double s = 0.0;
    for (const auto& a : mu.atoms()) s += a.second * a.second;
    return std::sqrt(s);
}

Measure1D convolve(const Measure1D& mu, const Measure1D& nu, ConvolutionMethod method) {
    if (mu.level() != nu.level()) throw Error("convolution of measures at different levels");
    if (mu.empty() || nu.empty()) return Measure1D(mu.level(), {});
    if (method == ConvolutionMethod::Automatic) {
        method = mu.size() + nu.size() < kDirectConvolutionLimit ? ConvolutionMethod::Direct : ConvolutionMethod::Fft;
    }
    return method == ConvolutionMethod::Direct ? convolve_direct(mu, nu) : convolve_fft(mu, nu);
}

Measure1D push_project(const Measure2D& mu, const Direction& theta) {
    std::vector<Measure1D::Atom> atoms;
    atoms.reserve(mu.size());
    for (const auto& [c, w] : mu.atoms()) atoms.emplace_back(project_point(c.x, c.y, theta), w);
    return Measure1D(mu.level(), std::move(atoms));
}

Measure1D scale_round(const Measure1D& nu, const Direction& theta) {
    std::vector<Measure1D::Atom> atoms;
    atoms.reserve(nu.size());
    for (const auto& [y, w] : nu.atoms()) atoms.emplace_back(project_point(0, y, theta), w);
    return Measure1D(nu.level(), std::move(atoms));
}

}  // namespace fslab
