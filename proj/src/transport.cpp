#include "shellmin/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <vector>

#include "shellmin/equilibria.hpp"
#include "shellmin/rng.hpp"

namespace shellmin {

namespace {

constexpr Index kAssignmentCap = 2048;
constexpr Index kBottleneckCap = 4096;

void check_pair(const DiscreteMeasure& a, const DiscreteMeasure& b, bool equal_cardinality,
                Index cap) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("transport: dimension mismatch");
    if (!a.uniform() || !b.uniform())
        throw std::invalid_argument("transport: only uniform-weight measures are supported");
    if (equal_cardinality && a.size() != b.size())
        throw std::invalid_argument("transport: cardinality mismatch");
    if (a.size() > cap || b.size() > cap)
        throw std::invalid_argument("transport: measure exceeds the supported cardinality");
}

// Exact minimum-cost assignment on an N x N matrix by the potentials
// (dual-update) method, O(N^3). Returns row -> column.
std::vector<Index> solve_assignment(const Mat& cost) {
    const Index n = cost.rows();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1, 0.0);
    std::vector<Index> p(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1, 0);
    for (Index i = 1; i <= n; ++i) {
        p[0] = i;
        Index j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const Index i0 = p[j0];
            Index j1 = 0;
            double delta = inf;
            for (Index j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (Index j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const Index j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<Index> row_to_col(n);
    for (Index j = 1; j <= n; ++j) row_to_col[p[j] - 1] = j - 1;
    return row_to_col;
}

Mat pairwise_power_cost(const DiscreteMeasure& a, const DiscreteMeasure& b, double p) {
    Mat cost(a.size(), b.size());
    for (Index i = 0; i < a.size(); ++i)
        for (Index j = 0; j < b.size(); ++j)
            cost(i, j) = std::pow((a.point(i) - b.point(j)).norm(), p);
    return cost;
}

// Terms are summed in ascending order so that the sorted 1D path and the
// assignment path produce bit-identical results on the same matching.
double mean_of_terms(std::vector<double> terms) {
    std::sort(terms.begin(), terms.end());
    CompensatedSum total;
    for (double t : terms) total.add(t);
    return total.value() / static_cast<double>(terms.size());
}

double sorted_1d_cost(const DiscreteMeasure& a, const DiscreteMeasure& b, double p) {
    std::vector<double> xs(a.points().data(), a.points().data() + a.size());
    std::vector<double> ys(b.points().data(), b.points().data() + b.size());
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    std::vector<double> terms(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        terms[i] = std::pow(std::abs(xs[i] - ys[i]), p);
    return std::pow(mean_of_terms(std::move(terms)), 1.0 / p);
}

// Dinic max-flow on small bipartite feasibility networks.
class MaxFlow {
  public:
    explicit MaxFlow(int n) : graph_(n), level_(n), iter_(n) {}

    void add_edge(int from, int to, long long cap) {
        graph_[from].push_back({to, cap, static_cast<int>(graph_[to].size())});
        graph_[to].push_back({from, 0, static_cast<int>(graph_[from].size()) - 1});
    }

    long long run(int s, int t) {
        long long flow = 0;
        while (bfs(s, t)) {
            std::fill(iter_.begin(), iter_.end(), 0);
            while (long long f = dfs(s, t, std::numeric_limits<long long>::max())) flow += f;
        }
        return flow;
    }

  private:
    struct Edge {
        int to;
        long long cap;
        int rev;
    };

    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<int> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (const Edge& e : graph_[v]) {
                if (e.cap > 0 && level_[e.to] < 0) {
                    level_[e.to] = level_[v] + 1;
                    q.push(e.to);
                }
            }
        }
        return level_[t] >= 0;
    }

    long long dfs(int v, int t, long long f) {
        if (v == t) return f;
        for (int& i = iter_[v]; i < static_cast<int>(graph_[v].size()); ++i) {
            Edge& e = graph_[v][i];
            if (e.cap <= 0 || level_[v] >= level_[e.to]) continue;
            const long long d = dfs(e.to, t, std::min(f, e.cap));
            if (d > 0) {
                e.cap -= d;
                graph_[e.to][e.rev].cap += d;
                return d;
            }
        }
        return 0;
    }

    std::vector<std::vector<Edge>> graph_;
    std::vector<int> level_;
    std::vector<int> iter_;
};

struct CollapsedMeasure {
    std::vector<Vec> points;
    std::vector<long long> counts;
};

CollapsedMeasure collapse_duplicates(const DiscreteMeasure& m) {
    std::map<std::vector<double>, long long> seen;
    for (Index i = 0; i < m.size(); ++i) {
        const Vec x = m.point(i);
        std::vector<double> key(x.data(), x.data() + x.size());
        ++seen[key];
    }
    CollapsedMeasure out;
    for (const auto& [key, count] : seen) {
        out.points.push_back(Eigen::Map<const Vec>(key.data(), key.size()));
        out.counts.push_back(count);
    }
    return out;
}

} // namespace

Coupling optimal_coupling(const DiscreteMeasure& a, const DiscreteMeasure& b, double p) {
    check_pair(a, b, true, kAssignmentCap);
    if (!(p >= 1.0) || std::isinf(p))
        throw std::invalid_argument("optimal_coupling: requires finite p >= 1");
    const Mat cost = pairwise_power_cost(a, b, p);
    Coupling out;
    out.p = p;
    out.match = solve_assignment(cost);
    std::vector<double> terms(a.size());
    for (Index i = 0; i < a.size(); ++i) terms[i] = cost(i, out.match[i]);
    out.cost = mean_of_terms(std::move(terms));
    return out;
}

double wasserstein_p(const DiscreteMeasure& a, const DiscreteMeasure& b, double p) {
    if (std::isinf(p)) return wasserstein_inf(a, b);
    check_pair(a, b, true, kAssignmentCap);
    if (!(p >= 1.0)) throw std::invalid_argument("wasserstein_p: requires p >= 1");
    if (a.dim() == 1) return sorted_1d_cost(a, b, p);
    return std::pow(optimal_coupling(a, b, p).cost, 1.0 / p);
}

double detail::wasserstein_p_assignment(const DiscreteMeasure& a, const DiscreteMeasure& b,
                                        double p) {
    return std::pow(optimal_coupling(a, b, p).cost, 1.0 / p);
}

double wasserstein_inf(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    check_pair(a, b, false, kBottleneckCap);
    if (a.dim() == 1 && a.size() == b.size()) {
        std::vector<double> xs(a.points().data(), a.points().data() + a.size());
        std::vector<double> ys(b.points().data(), b.points().data() + b.size());
        std::sort(xs.begin(), xs.end());
        std::sort(ys.begin(), ys.end());
        double worst = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
            worst = std::max(worst, std::abs(xs[i] - ys[i]));
        return worst;
    }

    const CollapsedMeasure ca = collapse_duplicates(a);
    const CollapsedMeasure cb = collapse_duplicates(b);
    const int na = static_cast<int>(ca.points.size());
    const int nb = static_cast<int>(cb.points.size());

    // Masses i/Na and j/Nb refine to integer units of 1/lcm(Na, Nb).
    const long long L = std::lcm(static_cast<long long>(a.size()), static_cast<long long>(b.size()));
    const long long unit_a = L / a.size();
    const long long unit_b = L / b.size();

    Mat dist(na, nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) dist(i, j) = (ca.points[i] - cb.points[j]).norm();

    std::vector<double> candidates(dist.data(), dist.data() + dist.size());
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // Every supply and every demand must ship at least to its nearest partner.
    double lower = 0.0;
    for (int i = 0; i < na; ++i) lower = std::max(lower, dist.row(i).minCoeff());
    for (int j = 0; j < nb; ++j) lower = std::max(lower, dist.col(j).minCoeff());

    auto feasible = [&](double t) {
        MaxFlow flow(na + nb + 2);
        const int source = na + nb;
        const int sink = na + nb + 1;
        for (int i = 0; i < na; ++i) flow.add_edge(source, i, unit_a * ca.counts[i]);
        for (int j = 0; j < nb; ++j) flow.add_edge(na + j, sink, unit_b * cb.counts[j]);
        for (int i = 0; i < na; ++i)
            for (int j = 0; j < nb; ++j)
                if (dist(i, j) <= t) flow.add_edge(i, na + j, L);
        return flow.run(source, sink) == L;
    };

    std::size_t lo = static_cast<std::size_t>(
        std::lower_bound(candidates.begin(), candidates.end(), lower) - candidates.begin());
    std::size_t hi = candidates.size() - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (feasible(candidates[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return candidates[lo];
}

double distance_to_minimizer(const DiscreteMeasure& m, const Kernel& k, double p) {
    const KernelParams& prm = k.params;
    if (prm.beta != 2.0)
        throw std::invalid_argument("distance_to_minimizer: minimizer family known only for beta = 2");
    if (prm.dim != m.dim())
        throw std::invalid_argument("distance_to_minimizer: kernel/measure dimension mismatch");
    const int n = m.dim();
    const DiscreteMeasure query = centered(m);

    const bool shell_window = (n >= 2 && prm.alpha > 2.0 && prm.alpha <= 4.0) ||
                              (n == 1 && prm.alpha > 3.0);
    if (shell_window) {
        const double R = steady_shell_radius(prm).root;
        const DiscreteMeasure proxy =
            centered(shell_proxy(R, n, static_cast<int>(query.size())));
        return wasserstein_p(query, proxy, p);
    }
    if (prm.alpha > 4.0) {
        const Index reps = query.size() / (n + 1);
        if (reps * (n + 1) != query.size())
            throw std::invalid_argument(
                "distance_to_minimizer: cardinality must be a multiple of n+1 for the simplex family");
        const DiscreteMeasure base = simplex_measure(n);
        Mat replicated(n, query.size());
        for (Index v = 0; v < base.size(); ++v)
            for (Index r = 0; r < reps; ++r) replicated.col(v * reps + r) = base.point(v);

        Rng rng(derive_seed(0x51397a3eULL, static_cast<std::uint64_t>(n)));
        double best = std::numeric_limits<double>::infinity();
        for (int sample = 0; sample < 64; ++sample) {
            Mat Q = Mat::Identity(n, n);
            if (sample > 0) {
                Mat G(n, n);
                for (Index i = 0; i < n; ++i)
                    for (Index j = 0; j < n; ++j) G(i, j) = rng.normal();
                const Eigen::HouseholderQR<Mat> qr(G);
                Q = qr.householderQ();
                const Mat Rfac = qr.matrixQR().triangularView<Eigen::Upper>();
                for (Index j = 0; j < n; ++j)
                    if (Rfac(j, j) < 0.0) Q.col(j) *= -1.0;
            }
            const DiscreteMeasure rotated(Q * replicated);
            best = std::min(best, wasserstein_p(query, rotated, p));
        }
        return best;
    }
    throw std::invalid_argument("distance_to_minimizer: unsupported parameter window");
}

} // namespace shellmin
