#include "loggamma/polymer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <string>

#include "loggamma/determinant.hpp"
#include "loggamma/error.hpp"
#include "loggamma/logspace.hpp"

namespace loggamma {

namespace {

std::string str(Point p) { return "(" + std::to_string(p.col) + "," + std::to_string(p.row) + ")"; }

void require_inside(const LogGrid& g, Point p, const char* what) {
    if (!g.contains(p.col, p.row)) throw DomainError(std::string(what) + " " + str(p) + " lies outside the window");
}

// Fills out[(r - u.row) * cols + (c - u.col)] with log Z[u -> (c, r)] over
// the rectangle [u, corner]. Assumes both corners are inside the window.
template <typename Real>
void forward_dp(const LogGrid& g, Point u, Point corner, std::vector<Real>& out) {
    const auto cols = corner.col - u.col + 1;
    const auto rows = corner.row - u.row + 1;
    out.assign(static_cast<std::size_t>(cols * rows), neg_inf_v<Real>);
    for (std::int64_t i = 0; i < rows; ++i) {
        Real* cur = out.data() + i * cols;
        const Real* prev = i > 0 ? out.data() + (i - 1) * cols : nullptr;
        for (std::int64_t j = 0; j < cols; ++j) {
            Real lam = g.at(u.col + j, u.row + i);
            if (lam == kNegInf) continue;
            Real acc;
            if (i == 0 && j == 0) {
                acc = 0;
            } else {
                Real left = j > 0 ? cur[j - 1] : neg_inf_v<Real>;
                Real below = prev ? prev[j] : neg_inf_v<Real>;
                acc = log_add(left, below);
                if (acc == neg_inf_v<Real>) continue;
            }
            cur[j] = lam + acc;
        }
    }
}

// out[(r - corner.row) * cols + (c - corner.col)] = log Z[(c, r) -> v].
template <typename Real>
void backward_dp(const LogGrid& g, Point v, Point corner, std::vector<Real>& out) {
    const auto cols = v.col - corner.col + 1;
    const auto rows = v.row - corner.row + 1;
    out.assign(static_cast<std::size_t>(cols * rows), neg_inf_v<Real>);
    for (std::int64_t i = rows - 1; i >= 0; --i) {
        Real* cur = out.data() + i * cols;
        const Real* next = i + 1 < rows ? out.data() + (i + 1) * cols : nullptr;
        for (std::int64_t j = cols - 1; j >= 0; --j) {
            Real lam = g.at(corner.col + j, corner.row + i);
            if (lam == kNegInf) continue;
            Real acc;
            if (i == rows - 1 && j == cols - 1) {
                acc = 0;
            } else {
                Real right = j + 1 < cols ? cur[j + 1] : neg_inf_v<Real>;
                Real up = next ? next[j] : neg_inf_v<Real>;
                acc = log_add(right, up);
                if (acc == neg_inf_v<Real>) continue;
            }
            cur[j] = lam + acc;
        }
    }
}

bool blocked(const LogGrid& g, std::int64_t c, std::int64_t r) { return g.get_or_masked(c, r) == kNegInf; }

// Sort key along a south-east chain: column ascending, row descending.
std::vector<Point> chain_sorted(std::span<const Point> pts) {
    std::vector<Point> v(pts.begin(), pts.end());
    std::sort(v.begin(), v.end(), [](Point a, Point b) { return a.col != b.col ? a.col < b.col : a.row > b.row; });
    return v;
}

bool is_chain(const std::vector<Point>& v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i - 1].col <= v[i].col && v[i - 1].row >= v[i].row)) return false;
        if (v[i - 1] == v[i]) return false;
    }
    return true;
}

bool all_distinct(std::span<const Point> pts) {
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (pts[i] == pts[j]) return false;
    return true;
}

void check_pair(const LogGrid& g, std::span<const Point> U, std::span<const Point> V) {
    if (U.size() != V.size()) throw DomainError("endpoint sets differ in size");
    if (U.empty()) throw DomainError("empty endpoint set");
    for (Point p : U) require_inside(g, p, "source");
    for (Point p : V) require_inside(g, p, "sink");
}

// Bounding box of a set of points.
Window bounding(std::span<const Point> a, std::span<const Point> b) {
    Window w{a[0].col, a[0].col, a[0].row, a[0].row};
    auto grow = [&](Point p) {
        w.col_min = std::min(w.col_min, p.col);
        w.col_max = std::max(w.col_max, p.col);
        w.row_min = std::min(w.row_min, p.row);
        w.row_max = std::max(w.row_max, p.row);
    };
    for (Point p : a) grow(p);
    for (Point p : b) grow(p);
    return w;
}

}  // namespace

double log_path_count(Point u, Point v) {
    if (!reachable(u, v)) return kNegInf;
    double a = static_cast<double>(v.col - u.col);
    double b = static_cast<double>(v.row - u.row);
    return std::lgamma(a + b + 1) - std::lgamma(a + 1) - std::lgamma(b + 1);
}

double log_Z_point(const LogGrid& g, Point u, Point v) {
    require_inside(g, u, "start");
    require_inside(g, v, "end");
    if (!reachable(u, v)) return kNegInf;
    const auto cols = v.col - u.col + 1;
    std::vector<double> row(static_cast<std::size_t>(cols), kNegInf);
    for (auto r = u.row; r <= v.row; ++r) {
        double left = kNegInf;
        for (std::int64_t j = 0; j < cols; ++j) {
            double lam = g.at(u.col + j, r);
            double acc = (r == u.row && j == 0) ? 0.0 : log_add(left, row[j]);
            double val = (lam == kNegInf || acc == kNegInf) ? kNegInf : lam + acc;
            row[j] = val;
            left = val;
        }
    }
    return row[cols - 1];
}

LogGrid forward_table(const LogGrid& g, Point u, Point corner) {
    require_inside(g, u, "start");
    require_inside(g, corner, "corner");
    if (!reachable(u, corner)) throw DomainError("forward table corner " + str(corner) + " is not up-right of " + str(u));
    std::vector<double> v;
    forward_dp(g, u, corner, v);
    LogGrid out(Window{u.col, corner.col, u.row, corner.row});
    std::copy(v.begin(), v.end(), out.values().begin());
    return out;
}

ExtendedTable forward_table_extended(const LogGrid& g, Point u, Point corner) {
    require_inside(g, u, "start");
    require_inside(g, corner, "corner");
    if (!reachable(u, corner)) throw DomainError("forward table corner " + str(corner) + " is not up-right of " + str(u));
    std::vector<long double> v;
    forward_dp(g, u, corner, v);
    return ExtendedTable(Window{u.col, corner.col, u.row, corner.row}, std::move(v));
}

LogGrid backward_table(const LogGrid& g, Point v, Point corner) {
    require_inside(g, v, "end");
    require_inside(g, corner, "corner");
    if (!reachable(corner, v)) throw DomainError("backward table corner " + str(corner) + " is not down-left of " + str(v));
    std::vector<double> vals;
    backward_dp(g, v, corner, vals);
    LogGrid out(Window{corner.col, v.col, corner.row, v.row});
    std::copy(vals.begin(), vals.end(), out.values().begin());
    return out;
}

std::vector<Point> antidiagonal_segment(Point w, std::int64_t a) {
    if (a < 0) throw DomainError("segment half-width must be non-negative");
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(2 * a + 1));
    for (std::int64_t i = -a; i <= a; ++i) out.push_back({w.col + i, w.row - i});
    return out;
}

double log_Z_point_to_set(const LogGrid& g, Point u, std::span<const Point> targets) {
    const Point one[] = {u};
    return log_Z_set_to_set(g, one, targets);
}

double log_Z_set_to_set(const LogGrid& g, std::span<const Point> sources, std::span<const Point> targets) {
    if (sources.empty() || targets.empty()) throw DomainError("empty endpoint set");
    for (Point p : sources) require_inside(g, p, "source");
    for (Point p : targets) require_inside(g, p, "target");
    Point corner = targets[0];
    for (Point t : targets) corner = {std::max(corner.col, t.col), std::max(corner.row, t.row)};
    std::vector<double> terms;
    for (Point s : sources) {
        if (!reachable(s, corner)) continue;
        LogGrid tab = forward_table(g, s, corner);
        for (Point t : targets) terms.push_back(tab.get_or_masked(t.col, t.row));
    }
    return log_sum_exp(terms);
}

double log_Z_max(const LogGrid& g, std::span<const Point> sources, std::span<const Point> targets) {
    if (sources.empty() || targets.empty()) throw DomainError("empty endpoint set");
    for (Point p : sources) require_inside(g, p, "source");
    for (Point p : targets) require_inside(g, p, "target");
    Point corner = targets[0];
    for (Point t : targets) corner = {std::max(corner.col, t.col), std::max(corner.row, t.row)};
    double best = kNegInf;
    for (Point s : sources) {
        if (!reachable(s, corner)) continue;
        LogGrid tab = forward_table(g, s, corner);
        for (Point t : targets) best = std::max(best, tab.get_or_masked(t.col, t.row));
    }
    return best;
}

double last_passage(const LogGrid& g, Point u, Point v) {
    require_inside(g, u, "start");
    require_inside(g, v, "end");
    if (!reachable(u, v)) return kNegInf;
    const auto cols = v.col - u.col + 1;
    std::vector<double> row(static_cast<std::size_t>(cols), kNegInf);
    for (auto r = u.row; r <= v.row; ++r) {
        double left = kNegInf;
        for (std::int64_t j = 0; j < cols; ++j) {
            double lam = g.at(u.col + j, r);
            double acc = (r == u.row && j == 0) ? 0.0 : std::max(left, row[j]);
            double val = (lam == kNegInf || acc == kNegInf) ? kNegInf : lam + acc;
            row[j] = val;
            left = val;
        }
    }
    return row[cols - 1];
}

bool multipath_feasible(const LogGrid& g, std::span<const Point> U, std::span<const Point> V) {
    check_pair(g, U, V);
    if (!all_distinct(U) || !all_distinct(V)) return false;
    const Window box = bounding(U, V);
    const auto cols = box.cols();
    const auto cells = static_cast<std::size_t>(box.cells());
    // Node 2i is the entry of cell i, 2i + 1 its exit; unit vertex capacity.
    const std::size_t S = 2 * cells, T = S + 1, nodes = T + 1;
    struct Edge {
        std::size_t to;
        int cap;
    };
    std::vector<Edge> edges;
    std::vector<std::vector<std::size_t>> adj(nodes);
    auto add = [&](std::size_t a, std::size_t b) {
        adj[a].push_back(edges.size());
        edges.push_back({b, 1});
        adj[b].push_back(edges.size());
        edges.push_back({a, 0});
    };
    auto id = [&](Point p) { return static_cast<std::size_t>((p.row - box.row_min) * cols + (p.col - box.col_min)); };
    for (auto r = box.row_min; r <= box.row_max; ++r)
        for (auto c = box.col_min; c <= box.col_max; ++c) {
            if (blocked(g, c, r)) continue;
            std::size_t i = id({c, r});
            add(2 * i, 2 * i + 1);
            if (c < box.col_max && !blocked(g, c + 1, r)) add(2 * i + 1, 2 * id({c + 1, r}));
            if (r < box.row_max && !blocked(g, c, r + 1)) add(2 * i + 1, 2 * id({c, r + 1}));
        }
    for (Point u : U) {
        if (blocked(g, u.col, u.row)) return false;
        add(S, 2 * id(u));
    }
    for (Point v : V) {
        if (blocked(g, v.col, v.row)) return false;
        add(2 * id(v) + 1, T);
    }
    std::size_t flow = 0;
    std::vector<std::size_t> via(nodes);
    for (;;) {
        std::vector<char> seen(nodes, 0);
        std::deque<std::size_t> queue{S};
        seen[S] = 1;
        while (!queue.empty() && !seen[T]) {
            std::size_t a = queue.front();
            queue.pop_front();
            for (std::size_t e : adj[a])
                if (edges[e].cap > 0 && !seen[edges[e].to]) {
                    seen[edges[e].to] = 1;
                    via[edges[e].to] = e;
                    queue.push_back(edges[e].to);
                }
        }
        if (!seen[T]) break;
        for (std::size_t x = T; x != S;) {
            std::size_t e = via[x];
            edges[e].cap -= 1;
            edges[e ^ 1].cap += 1;
            x = edges[e ^ 1].to;
        }
        ++flow;
    }
    return flow == U.size();
}

bool determinant_admissible(const LogGrid& g, std::span<const Point> U, std::span<const Point> V) {
    check_pair(g, U, V);
    auto su = chain_sorted(U);
    auto sv = chain_sorted(V);
    if (!is_chain(su) || !is_chain(sv)) return false;
    for (Point u : su) {
        if (blocked(g, u.col, u.row)) return false;
        if (!blocked(g, u.col - 1, u.row) && !blocked(g, u.col, u.row - 1)) return false;
    }
    for (Point v : sv) {
        if (blocked(g, v.col, v.row)) return false;
        if (!blocked(g, v.col + 1, v.row) && !blocked(g, v.col, v.row + 1)) return false;
    }
    return true;
}

double log_Z_determinant(const LogGrid& g, std::span<const Point> U, std::span<const Point> V) {
    if (!determinant_admissible(g, U, V)) throw DomainError("endpoint configuration is not admissible for the determinant route");
    auto su = chain_sorted(U);
    auto sv = chain_sorted(V);
    const std::size_t k = su.size();
    Point corner = sv[0];
    for (Point v : sv) corner = {std::max(corner.col, v.col), std::max(corner.row, v.row)};
    std::vector<long double> L(k * k, neg_inf_v<long double>);
    for (std::size_t a = 0; a < k; ++a) {
        if (!reachable(su[a], corner)) continue;
        ExtendedTable tab = forward_table_extended(g, su[a], corner);
        for (std::size_t b = 0; b < k; ++b) L[a * k + b] = tab.at(sv[b]);
    }
    return static_cast<double>(log_det_positive(L, k));
}

namespace {

class Enumerator {
public:
    Enumerator(const LogGrid& g, std::vector<Point> U, std::vector<Point> V, std::uint64_t budget)
        : g_(g), U_(std::move(U)), V_(std::move(V)), budget_(budget), box_(bounding(U_, V_)) {
        occupied_.assign(static_cast<std::size_t>(box_.cells()), 0);
        sink_used_.assign(V_.size(), 0);
        source_index_.assign(occupied_.size(), -1);
        sink_index_.assign(occupied_.size(), -1);
        for (std::size_t i = 0; i < U_.size(); ++i) source_index_[id(U_[i])] = static_cast<int>(i);
        for (std::size_t j = 0; j < V_.size(); ++j) sink_index_[id(V_[j])] = static_cast<int>(j);
    }

    long double run() {
        start_path(0, 0.0L);
        return total_;
    }

private:
    std::size_t id(Point p) const {
        return static_cast<std::size_t>((p.row - box_.row_min) * box_.cols() + (p.col - box_.col_min));
    }

    bool some_sink_ahead(Point p) const {
        for (std::size_t j = 0; j < V_.size(); ++j)
            if (!sink_used_[j] && reachable(p, V_[j])) return true;
        return false;
    }

    void start_path(std::size_t i, long double logw) {
        if (i == U_.size()) {
            total_ = log_add(total_, logw);
            return;
        }
        Point u = U_[i];
        if (occupied_[id(u)]) return;
        walk(i, u, logw + g_.at(u.col, u.row));
    }

    void walk(std::size_t i, Point x, long double logw) {
        if (++steps_ > budget_) throw CapacityError("brute-force enumeration exceeded " + std::to_string(budget_) + " steps");
        const std::size_t xi = id(x);
        occupied_[xi] = 1;
        int sink = sink_index_[xi];
        if (sink >= 0 && !sink_used_[sink]) {
            // A path that reached a free sink must end there: passing through
            // would occupy it and leave it unusable.
            sink_used_[sink] = 1;
            start_path(i + 1, logw);
            sink_used_[sink] = 0;
        } else {
            const Point next[2] = {{x.col + 1, x.row}, {x.col, x.row + 1}};
            for (Point y : next) {
                if (!box_.contains(y.col, y.row) || blocked(g_, y.col, y.row)) continue;
                const std::size_t yi = id(y);
                if (occupied_[yi]) continue;
                int s = source_index_[yi];
                if (s >= 0 && static_cast<std::size_t>(s) > i) continue;
                if (!some_sink_ahead(y)) continue;
                walk(i, y, logw + g_.at(y.col, y.row));
            }
        }
        occupied_[xi] = 0;
    }

    const LogGrid& g_;
    std::vector<Point> U_, V_;
    std::uint64_t budget_;
    std::uint64_t steps_ = 0;
    Window box_;
    std::vector<char> occupied_;
    std::vector<char> sink_used_;
    std::vector<int> source_index_, sink_index_;
    long double total_ = neg_inf_v<long double>;
};

}  // namespace

double brute_force_multipath(const LogGrid& g, std::span<const Point> U, std::span<const Point> V, std::uint64_t step_budget) {
    check_pair(g, U, V);
    if (!all_distinct(U) || !all_distinct(V)) return kNegInf;
    for (Point p : U)
        if (blocked(g, p.col, p.row)) return kNegInf;
    for (Point p : V)
        if (blocked(g, p.col, p.row)) return kNegInf;
    Enumerator e(g, chain_sorted(U), chain_sorted(V), step_budget);
    return static_cast<double>(e.run());
}

const char* method_name(MultipathMethod m) {
    switch (m) {
        case MultipathMethod::Infeasible: return "infeasible";
        case MultipathMethod::Determinant: return "determinant";
        case MultipathMethod::Sweep: return "sweep";
        case MultipathMethod::BruteForce: return "brute_force";
    }
    return "unknown";
}

double sweep_multipath(const LogGrid& g, std::span<const Point> U, std::span<const Point> V, std::size_t state_budget) {
    check_pair(g, U, V);
    if (!all_distinct(U) || !all_distinct(V)) return kNegInf;
    auto level = [](Point p) { return p.col + p.row; };
    std::int64_t first = level(U[0]), last = level(V[0]);
    for (Point u : U) {
        first = std::min(first, level(u));
        last = std::max(last, level(u));
    }
    for (Point v : V) last = std::max(last, level(v));
    auto is_sink = [&](std::int64_t col, std::int64_t lv) {
        return std::any_of(V.begin(), V.end(), [&](Point v) { return v.col == col && level(v) == lv; });
    };

    // State: sorted columns of the live paths on the current anti-diagonal.
    using State = std::vector<std::int64_t>;
    std::map<State, double> cur{{State{}, 0.0}};
    for (std::int64_t lv = first; lv <= last && !cur.empty(); ++lv) {
        std::map<State, double> entered;
        for (auto& [st, w] : cur) {
            State s = st;
            double add = 0;
            bool ok = true;
            for (Point u : U) {
                if (level(u) != lv) continue;
                if (std::find(s.begin(), s.end(), u.col) != s.end()) ok = false;
                s.push_back(u.col);
                add += g.at(u.col, u.row);
            }
            if (!ok || add == kNegInf) continue;
            std::sort(s.begin(), s.end());
            // A path standing on a sink ends there.
            State live;
            for (std::int64_t c : s)
                if (!is_sink(c, lv)) live.push_back(c);
            auto [it, fresh] = entered.try_emplace(std::move(live), w + add);
            if (!fresh) it->second = log_add(it->second, w + add);
        }
        if (lv == last) {
            cur = std::move(entered);
            break;
        }
        std::map<State, double> next;
        for (auto& [s, w] : entered) {
            const std::size_t k = s.size();
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
                State t(k);
                double add = 0;
                bool ok = true;
                for (std::size_t i = 0; i < k && ok; ++i) {
                    const bool right = (mask >> i) & 1;
                    const std::int64_t c = s[i] + (right ? 1 : 0);
                    const std::int64_t r = lv + 1 - c;
                    if (i > 0 && c <= t[i - 1]) ok = false;
                    else if (!g.contains(c, r)) ok = false;
                    else {
                        t[i] = c;
                        add += g.at(c, r);
                    }
                }
                if (!ok || add == kNegInf) continue;
                auto [it, fresh] = next.try_emplace(std::move(t), w + add);
                if (!fresh) it->second = log_add(it->second, w + add);
            }
        }
        if (next.size() > state_budget) throw CapacityError("multipath sweep exceeds " + std::to_string(state_budget) + " states");
        cur = std::move(next);
    }
    auto it = cur.find(State{});
    return it == cur.end() ? kNegInf : it->second;
}

double log_Z_multipath(const LogGrid& g, std::span<const Point> U, std::span<const Point> V, MultipathMethod* method) {
    check_pair(g, U, V);
    if (!multipath_feasible(g, U, V)) {
        if (method) *method = MultipathMethod::Infeasible;
        return kNegInf;
    }
    if (determinant_admissible(g, U, V)) {
        try {
            const double v = log_Z_determinant(g, U, V);
            if (method) *method = MultipathMethod::Determinant;
            return v;
        } catch (const ConditioningError&) {
            // fall through to the exact sweep
        }
    }
    if (method) *method = MultipathMethod::Sweep;
    return sweep_multipath(g, U, V);
}

AntidiagonalMax argmax_on_antidiagonal(const LogGrid& g, Point origin, std::int64_t r, Point w) {
    require_inside(g, origin, "origin");
    require_inside(g, w, "end");
    if (!reachable(origin, w)) throw DomainError("end " + str(w) + " is not up-right of origin " + str(origin));
    const std::int64_t diag = (w.col - origin.col) + (w.row - origin.row);
    if (!(r > 0 && 2 * r < diag)) throw DomainError("anti-diagonal index must satisfy 0 < 2r < |w - origin|_1");
    LogGrid fwd = forward_table(g, origin, w);
    LogGrid bwd = backward_table(g, w, origin);
    AntidiagonalMax best;
    bool found = false;
    for (std::int64_t i = -r; i <= r; ++i) {
        Point x{origin.col + r + i, origin.row + r - i};
        if (!reachable(origin, x) || !reachable(x, w)) continue;
        double v = fwd.at(x.col, x.row) + bwd.at(x.col, x.row);
        if (v == kNegInf) continue;
        if (!found || v > best.value) {
            best = {x, i, v, 0};
            found = true;
        } else if (v == best.value) {
            ++best.ties;
        }
    }
    if (!found) throw DomainError("anti-diagonal does not meet any path from origin to end");
    return best;
}

}  // namespace loggamma
