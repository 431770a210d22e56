#include "loggamma/grsk.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "loggamma/error.hpp"
#include "loggamma/hash.hpp"
#include "loggamma/logspace.hpp"
#include "loggamma/rng.hpp"

namespace loggamma {

namespace {

std::string pair_str(std::int64_t a, std::int64_t b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

// Running (max, excess, count) of a set of path energies at inverse temperature beta.
struct Acc {
    double m = kNegInf;
    double e = 0;
    double c = kNegInf;
};

Acc unit() { return Acc{0.0, 0.0, 0.0}; }

Acc combine(const Acc& a, const Acc& b, double beta) {
    if (a.m == kNegInf) return b;
    if (b.m == kNegInf) return a;
    Acc r;
    r.m = std::max(a.m, b.m);
    r.e = std::isinf(beta) ? 0.0 : log_add(a.e + beta * (a.m - r.m), b.e + beta * (b.m - r.m));
    r.c = log_add(a.c, b.c);
    return r;
}

Acc shifted(Acc a, double w) {
    if (a.m != kNegInf) a.m += w;
    return a;
}

EnsembleValue finish(const Acc& a, double beta) {
    EnsembleValue v;
    v.max_plus = a.m;
    v.excess = a.m == kNegInf ? 0.0 : a.e;
    v.log_count = a.c;
    v.value = (a.m == kNegInf || std::isinf(beta)) ? a.m : a.m + a.e / beta;
    return v;
}

void check_beta(double beta) {
    if (!(beta > 0)) throw ParameterError("beta must be positive");
}

void check_lines(const CurveFamily& f, int line_start, int line_end) {
    if (line_end < 1 || line_start < line_end || line_start > f.curves())
        throw DomainError("lines " + pair_str(line_start, line_end) + " are not a descending range within 1.." +
                          std::to_string(f.curves()));
}

// Rows of accumulators for lines line_start..line_end over columns x..y_max;
// out[j] is line line_start - j.
std::vector<std::vector<Acc>> forward_pass(const CurveFamily& f, std::int64_t x, int line_start, int line_end,
                                           std::int64_t y_max, double beta) {
    check_lines(f, line_start, line_end);
    if (x < f.start(line_start)) throw DomainError("start column " + std::to_string(x) + " is left of the curve start");
    if (y_max < x || y_max > f.n_max()) throw DomainError("end column out of range");
    const auto width = static_cast<std::size_t>(y_max - x + 1);
    std::vector<std::vector<Acc>> out;
    out.reserve(static_cast<std::size_t>(line_start - line_end + 1));
    for (int j = line_start; j >= line_end; --j) {
        std::vector<Acc> row(width);
        const std::vector<Acc>* below = out.empty() ? nullptr : &out.back();
        for (std::size_t b = 0; b < width; ++b) {
            const std::int64_t t = x + static_cast<std::int64_t>(b);
            Acc in;
            if (j == line_start && b == 0) in = unit();
            if (b > 0) in = combine(in, row[b - 1], beta);
            if (below) in = combine(in, (*below)[b], beta);
            row[b] = shifted(in, f.increment(j, t));
        }
        out.push_back(std::move(row));
    }
    return out;
}

json columns_json(std::span<const std::int64_t> c) { return json(std::vector<std::int64_t>(c.begin(), c.end())); }

}  // namespace

CurveFamily::CurveFamily(std::int64_t n_lines, std::vector<std::int64_t> starts, std::int64_t n_max,
                         std::vector<std::vector<double>> values, std::uint64_t fingerprint)
    : n_lines_(n_lines), starts_(std::move(starts)), n_max_(n_max), values_(std::move(values)), fingerprint_(fingerprint) {
    if (starts_.size() != values_.size()) throw DomainError("curve count mismatch");
    for (std::size_t i = 0; i < starts_.size(); ++i) {
        if (i > 0 && starts_[i] < starts_[i - 1]) throw DomainError("curve starts must be nondecreasing");
        if (starts_[i] < 1 || starts_[i] > n_max_ + 1) throw DomainError("curve start out of range");
        if (values_[i].size() != static_cast<std::size_t>(n_max_ - starts_[i] + 2))
            throw DomainError("curve " + std::to_string(i + 1) + " has the wrong length");
        values_[i][0] = 0.0;
    }
}

double CurveFamily::value(int i, std::int64_t j) const {
    if (i < 1 || i > curves()) throw DomainError("curve index " + std::to_string(i) + " out of range");
    const std::int64_t r = starts_[static_cast<std::size_t>(i - 1)];
    if (j < r - 1 || j > n_max_)
        throw DomainError("curve " + std::to_string(i) + " evaluated at " + std::to_string(j) + " outside [" +
                          std::to_string(r - 1) + "," + std::to_string(n_max_) + "]");
    return values_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - r + 1)];
}

LogGrid CurveFamily::as_grid(int L) const {
    if (L < 1 || L > curves()) throw DomainError("as_grid: line count out of range");
    LogGrid g(Window::rect(n_max_, L), kNegInf);
    for (int i = 1; i <= L; ++i)
        for (std::int64_t c = start(i); c <= n_max_; ++c) g.at(c, L + 1 - i) = increment(i, c);
    return g;
}

LogGrid strip(const LogGrid& env, std::int64_t cols, std::int64_t rows) {
    if (cols < 1 || rows < 1 || !env.contains(1, 1) || !env.contains(cols, rows))
        throw DomainError("strip " + pair_str(cols, rows) + " is not inside the environment");
    LogGrid s(Window::rect(cols, rows));
    for (std::int64_t r = 1; r <= rows; ++r)
        for (std::int64_t c = 1; c <= cols; ++c) s.at(c, r) = env.at(c, r);
    return s;
}

CurveFamily raw_curves(const LogGrid& env, std::int64_t n, std::int64_t n_max) {
    LogGrid s = strip(env, n_max, n);
    std::vector<std::vector<double>> vals(static_cast<std::size_t>(n));
    for (std::int64_t i = 1; i <= n; ++i) {
        auto& v = vals[static_cast<std::size_t>(i - 1)];
        v.assign(static_cast<std::size_t>(n_max + 1), 0.0);
        double acc = 0;
        for (std::int64_t j = 1; j <= n_max; ++j) {
            acc += s.at(j, n + 1 - i);
            v[static_cast<std::size_t>(j)] = acc;
        }
    }
    std::uint64_t h = fnv1a64(s.values().data(), s.values().size() * sizeof(double));
    return CurveFamily(n, std::vector<std::int64_t>(static_cast<std::size_t>(n), 1), n_max, std::move(vals), h);
}

CurveFamily build_curves(const LogGrid& env, std::int64_t n, int l_max, std::int64_t n_max) {
    if (l_max < 1 || l_max > n) throw DomainError("l_max must lie in 1..n");
    if (n_max < l_max) throw DomainError("n_max must be at least l_max");
    LogGrid s = strip(env, n_max, n);

    // Geometric RSK by local moves on t[row][col], in logs. After the sweep,
    // log Z[U_{n,k} -> H_k(j)] = sum_{r<k} t[n-r][j-r].
    const auto m = static_cast<std::size_t>(n_max);
    std::vector<double> t(s.values().begin(), s.values().end());
    auto at = [&](std::int64_t i, std::int64_t j) -> double& { return t[static_cast<std::size_t>(i - 1) * m + static_cast<std::size_t>(j - 1)]; };
    for (std::int64_t i = 1; i <= n; ++i) {
        for (std::int64_t j = 1; j <= n_max; ++j) {
            std::int64_t a = i, b = j;
            for (; a > 1 && b > 1; --a, --b) {
                const double up = at(a - 1, b), left = at(a, b - 1);
                const double both = log_add(up, left);
                at(a, b) += both;
                at(a - 1, b - 1) = up + left - both - at(a - 1, b - 1);
            }
            if (a > 1) at(a, 1) += at(a - 1, 1);
            else if (b > 1) at(1, b) += at(1, b - 1);
        }
    }

    std::vector<std::vector<double>> vals(static_cast<std::size_t>(l_max));
    std::vector<std::int64_t> starts(static_cast<std::size_t>(l_max));
    for (int k = 1; k <= l_max; ++k) {
        starts[static_cast<std::size_t>(k - 1)] = k;
        auto& v = vals[static_cast<std::size_t>(k - 1)];
        v.assign(static_cast<std::size_t>(n_max - k + 2), 0.0);
        for (std::int64_t j = k; j <= n_max; ++j) v[static_cast<std::size_t>(j - k + 1)] = at(n - k + 1, j - k + 1);
    }
    std::uint64_t h = fnv1a64(s.values().data(), s.values().size() * sizeof(double));
    h = fnv1a64(&l_max, sizeof l_max, h);
    return CurveFamily(n, std::move(starts), n_max, std::move(vals), h);
}

EnsembleValue ensemble_free_energy(const CurveFamily& f, const EnsembleQuery& q) {
    check_beta(q.beta);
    if (q.y < q.x) throw DomainError("ensemble end column precedes the start");
    auto rows = forward_pass(f, q.x, q.line_start, q.line_end, q.y, q.beta);
    return finish(rows.back().back(), q.beta);
}

EnsembleValue ensemble_reverse_energy(const CurveFamily& f, std::int64_t z, std::int64_t w, int k, double beta) {
    check_beta(beta);
    if (k < 0 || k + 1 > f.curves()) throw DomainError("reverse energy: k out of range");
    if (!(z < w)) throw DomainError("reverse energy needs z < w");
    if (w - z < k) throw DomainError("reverse energy: fewer than k columns in (z, w]");
    if (w > f.n_max()) throw DomainError("reverse energy: w beyond n_max");

    Acc total;
    if (k == 0) {
        total = unit();
    } else {
        // S[t - z - 1]: tuples z < t_1 < ... < t_i = t.
        const auto width = static_cast<std::size_t>(w - z);
        std::vector<Acc> S(width), next(width);
        for (std::size_t b = 0; b < width; ++b) {
            const std::int64_t t = z + 1 + static_cast<std::int64_t>(b);
            S[b] = shifted(unit(), f.value(2, t) - f.value(1, t - 1));
        }
        for (int i = 2; i <= k; ++i) {
            Acc prefix;
            for (std::size_t b = 0; b < width; ++b) {
                const std::int64_t t = z + 1 + static_cast<std::int64_t>(b);
                next[b] = prefix.m == kNegInf ? Acc{} : shifted(prefix, f.value(i + 1, t) - f.value(i, t - 1));
                prefix = combine(prefix, S[b], beta);
            }
            std::swap(S, next);
        }
        for (const Acc& a : S) total = combine(total, a, beta);
    }
    total = shifted(total, f.value(1, z) - f.value(k + 1, w));
    EnsembleValue v = finish(total, beta);
    v.value = -v.value;
    return v;
}

std::vector<double> ensemble_to_line(const CurveFamily& f, std::int64_t x, int line_start, int line_end, std::int64_t y_max) {
    auto rows = forward_pass(f, x, line_start, line_end, y_max, 1.0);
    std::vector<double> out;
    out.reserve(rows.back().size());
    for (const Acc& a : rows.back()) out.push_back(finish(a, 1.0).value);
    return out;
}

std::vector<double> ensemble_from_line(const CurveFamily& f, std::int64_t y, int line_end, int line_start, std::int64_t x_min) {
    check_lines(f, line_start, line_end);
    if (x_min < f.start(line_start)) throw DomainError("start column is left of the curve start");
    if (y < x_min || y > f.n_max()) throw DomainError("end column out of range");
    const auto width = static_cast<std::size_t>(y - x_min + 1);
    std::vector<double> prev(width, kNegInf), cur(width);
    for (int j = line_end; j <= line_start; ++j) {
        for (std::size_t b = width; b-- > 0;) {
            const std::int64_t t = x_min + static_cast<std::int64_t>(b);
            double in = (j == line_end && b + 1 == width) ? 0.0 : kNegInf;
            if (b + 1 < width) in = log_add(in, cur[b + 1]);
            in = log_add(in, prev[b]);
            cur[b] = in == kNegInf ? kNegInf : in + f.increment(j, t);
        }
        std::swap(prev, cur);
    }
    return prev;
}

double ensemble_multipath(const CurveFamily& f, std::span<const LinePoint> U, std::span<const LinePoint> V) {
    std::int64_t L = 1;
    for (auto p : U) L = std::max(L, p.line);
    for (auto p : V) L = std::max(L, p.line);
    LogGrid g = f.as_grid(static_cast<int>(L));
    std::vector<Point> u, v;
    for (auto p : U) u.push_back(to_point(p, L));
    for (auto p : V) v.push_back(to_point(p, L));
    return log_Z_multipath(g, u, v);
}

IdentityReport verify_greene(const LogGrid& env, std::int64_t n, std::span<const std::int64_t> u_cols,
                             std::span<const std::int64_t> v_cols, const CurveFamily* curves, double tol) {
    if (u_cols.empty() || u_cols.size() != v_cols.size()) throw DomainError("greene: U and V must have the same nonzero size");
    const std::int64_t u_max = *std::max_element(u_cols.begin(), u_cols.end());
    const std::int64_t v_max = *std::max_element(v_cols.begin(), v_cols.end());
    const std::int64_t cols = std::max(u_max, v_max);
    LogGrid s = strip(env, cols, n);
    const int L = static_cast<int>(std::min(n, u_max));

    std::vector<Point> U, V;
    for (auto c : u_cols) U.push_back({c, 1});
    for (auto c : v_cols) V.push_back({c, n});
    MultipathMethod method{};
    const double lhs = log_Z_multipath(s, U, V, &method);

    CurveFamily built;
    if (curves) {
        if (curves->n_lines() != n || curves->curves() < L || curves->n_max() < cols)
            throw DomainError("greene: supplied curves do not cover the query");
    } else {
        built = build_curves(s, n, L, cols);
        curves = &built;
    }
    std::vector<LinePoint> up, down;
    for (auto c : u_cols) up.push_back({c, std::min(n, c)});
    for (auto c : v_cols) down.push_back({c, 1});
    const double rhs = ensemble_multipath(*curves, up, down);

    json params{{"n", n}, {"U", columns_json(u_cols)}, {"V", columns_json(v_cols)},
                {"lhs_method", method_name(method)}};
    return equality_report("greene", std::move(params), lhs, rhs, tol);
}

IdentityReport verify_product(const LogGrid& env, std::int64_t n, const CurveFamily& curves, int l, std::int64_t N,
                              bool brute_force, double tol) {
    if (l < 1 || l > curves.curves()) throw DomainError("product: l out of range");
    if (N < l || N > curves.n_max()) throw DomainError("product: N out of range");
    double lhs = 0;
    for (int i = 1; i <= l; ++i) lhs += curves.value(i, N);
    LogGrid s = strip(env, N, n);
    std::vector<Point> U, V;
    for (int i = 1; i <= l; ++i) U.push_back({i, 1});
    for (std::int64_t c = N - l + 1; c <= N; ++c) V.push_back({c, n});
    MultipathMethod method = MultipathMethod::BruteForce;
    const double rhs = brute_force ? brute_force_multipath(s, U, V) : log_Z_multipath(s, U, V, &method);
    json params{{"n", n}, {"l", l}, {"N", N}, {"method", method_name(method)}};
    return equality_report("product", std::move(params), lhs, rhs, tol);
}

IdentityReport Key1Result::combined() const {
    return combine_reports("key1", main.params, {main, concentration, searrow});
}

Key1Result verify_key1(const LogGrid& env, std::int64_t n, std::int64_t x, std::int64_t y, int k, double tol) {
    if (k < 1 || k > n - 1) throw PreconditionError("key1 needs 1 <= k <= n - 1");
    if (!(k < x)) throw PreconditionError("key1 needs k < x");
    if (!(x < y - k + 1)) throw PreconditionError("key1 needs x < y - k + 1");
    LogGrid s = strip(env, y, n);
    const int top = static_cast<int>(std::min(n, x));
    CurveFamily wf = build_curves(s, n, top, y);
    json params{{"n", n}, {"x", x}, {"y", y}, {"k", k}};

    const double lhs = ensemble_free_energy(wf, {x, top, y, k + 1, 1.0}).value;
    LogGrid rev = reverse_grid(s, y, n);
    CurveFamily wr = build_curves(rev, n, k + 1, y);
    const double rev_energy = ensemble_reverse_energy(wr, y - x + 1, y, k, 1.0).value;
    const double rhs = wf.value(k + 1, y) - rev_energy;

    Key1Result r;
    r.main = equality_report("key1", params, lhs, rhs, tol);

    std::vector<Point> U, V;
    for (int i = 1; i <= k; ++i) U.push_back({i, 1});
    U.push_back({x, 1});
    for (std::int64_t c = y - k; c <= y; ++c) V.push_back({c, n});
    double conc = log_Z_multipath(s, U, V);
    for (int i = 1; i <= k; ++i) conc -= wf.value(i, y);
    r.concentration = equality_report("key1_concentration", params, lhs, conc, tol);

    std::vector<Point> U2, V2, H;
    for (int i = 1; i <= k + 1; ++i) U2.push_back({i, 1});
    V2.push_back({x, n});
    for (std::int64_t c = y - k + 1; c <= y; ++c) V2.push_back({c, n});
    for (std::int64_t c = y - k; c <= y; ++c) H.push_back({c, n});
    const double se_lhs = log_Z_multipath(s, U2, V2);
    const double se_rhs = log_Z_multipath(s, U2, H) - ensemble_reverse_energy(wf, x, y, k, 1.0).value;
    r.searrow = equality_report("key1_searrow", params, se_lhs, se_rhs, tol);
    return r;
}

IdentityReport verify_bisection(const CurveFamily& f, std::int64_t x, int l, std::int64_t y, int m, int k, double tol) {
    if (!(m <= k && k < l)) throw PreconditionError("bisection needs m <= k < l");
    const double lhs = ensemble_free_energy(f, {x, l, y, m, 1.0}).value;
    auto first = ensemble_to_line(f, x, l, k + 1, y);
    auto second = ensemble_from_line(f, y, m, k, x);
    std::vector<double> terms(first.size());
    for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = first[i] + second[i];
    const double rhs = log_sum_exp(terms);
    json params{{"x", x}, {"l", l}, {"y", y}, {"m", m}, {"k", k}};
    return equality_report("bisection", std::move(params), lhs, rhs, tol);
}

IdentityReport verify_monotonicity(const CurveFamily& f, const SampleSpec& spec, double slack) {
    RandomStream rng(spec.seed);
    double worst = kInfiniteBeta;
    std::size_t violations = 0;
    json worst_at;
    for (std::size_t s = 0; s < spec.count; ++s) {
        int l = static_cast<int>(rng.uniform_int(1, f.curves()));
        int m = static_cast<int>(rng.uniform_int(1, l));
        std::int64_t c[4];
        for (auto& v : c) v = rng.uniform_int(f.start(l), f.n_max());
        std::sort(c, c + 4);
        auto F = [&](std::int64_t a, std::int64_t b) { return ensemble_free_energy(f, {a, l, b, m, 1.0}).value; };
        const double margin = (F(c[1], c[3]) - F(c[0], c[3])) - (F(c[1], c[2]) - F(c[0], c[2]));
        if (margin < -slack) ++violations;
        if (margin < worst) {
            worst = margin;
            worst_at = json{{"x1", c[0]}, {"x2", c[1]}, {"y1", c[2]}, {"y2", c[3]}, {"l", l}, {"m", m}};
        }
    }
    json params{{"seed", spec.seed}, {"worst_at", worst_at}};
    return inequality_report("monotonicity", std::move(params), spec.count ? worst : 0.0, violations, spec.count, slack);
}

IdentityReport verify_quadrangle(const LogGrid& env, std::int64_t n, std::int64_t n_max, const SampleSpec& spec,
                                 double slack) {
    LogGrid s = strip(env, n_max, n);
    RandomStream rng(spec.seed);
    double worst = kInfiniteBeta;
    std::size_t violations = 0;
    json worst_at;
    for (std::size_t k = 0; k < spec.count; ++k) {
        std::int64_t c[4];
        for (auto& v : c) v = rng.uniform_int(1, n_max);
        std::sort(c, c + 4);
        auto Z = [&](std::int64_t a, std::int64_t b) { return log_Z_point(s, {a, 1}, {b, n}); };
        const double margin = Z(c[1], c[3]) + Z(c[0], c[2]) - Z(c[0], c[3]) - Z(c[1], c[2]);
        if (margin < -slack) ++violations;
        if (margin < worst) {
            worst = margin;
            worst_at = json{{"x1", c[0]}, {"x2", c[1]}, {"y1", c[2]}, {"y2", c[3]}};
        }
    }
    json params{{"n", n}, {"n_max", n_max}, {"seed", spec.seed}, {"worst_at", worst_at}};
    return inequality_report("quadrangle", std::move(params), spec.count ? worst : 0.0, violations, spec.count, slack);
}

namespace {

double a5_of(const AffineParams& a, int i) {
    return static_cast<std::size_t>(i - 1) < a.a5.size() ? a.a5[static_cast<std::size_t>(i - 1)] : 0.0;
}

// Value the affine map would assign at the boundary r_i - 1, where the family keeps 0.
double boundary_shift(const CurveFamily& f, const AffineParams& a, int i) {
    return a.a4 * (static_cast<double>(f.start(i) - 1) - a.a3) / a.a2 + a5_of(a, i);
}

std::int64_t lattice_index(const AffineParams& a, double x, const char* what) {
    const double z = a.a2 * x + a.a3;
    const double r = std::round(z);
    if (std::fabs(z - r) > 1e-9 * std::max(1.0, std::fabs(z)))
        throw DomainError(std::string(what) + ": a2*x + a3 = " + std::to_string(z) + " is not an integer");
    return static_cast<std::int64_t>(r);
}

}  // namespace

CurveFamily affine_family(const CurveFamily& f, const AffineParams& a) {
    if (!(a.a1 > 0)) throw ParameterError("affine map needs a1 > 0");
    if (!(a.a2 > 0)) throw ParameterError("affine map needs a2 > 0");
    std::vector<std::vector<double>> vals(static_cast<std::size_t>(f.curves()));
    std::vector<std::int64_t> starts(static_cast<std::size_t>(f.curves()));
    for (int i = 1; i <= f.curves(); ++i) {
        starts[static_cast<std::size_t>(i - 1)] = f.start(i);
        auto& v = vals[static_cast<std::size_t>(i - 1)];
        v.assign(static_cast<std::size_t>(f.n_max() - f.start(i) + 2), 0.0);
        for (std::int64_t z = f.start(i); z <= f.n_max(); ++z)
            v[static_cast<std::size_t>(z - f.start(i) + 1)] =
                a.a1 * f.value(i, z) + a.a4 * (static_cast<double>(z) - a.a3) / a.a2 + a5_of(a, i);
    }
    return CurveFamily(f.n_lines(), std::move(starts), f.n_max(), std::move(vals), f.fingerprint());
}

IdentityReport verify_affine(const CurveFamily& f, const AffineParams& a, const AffineQuery& q, double tol) {
    check_beta(q.beta);
    CurveFamily g = affine_family(f, a);
    const std::int64_t zx = lattice_index(a, q.x, "x");
    const std::int64_t zy = lattice_index(a, q.y, "y");
    auto touches_boundary = [&](int top) {
        for (int i = 1; i <= top; ++i)
            if (boundary_shift(f, a, i) != 0.0) return true;
        return false;
    };
    if (zx <= f.start(q.line_start) && touches_boundary(q.line_start))
        throw PreconditionError("affine needs a2*x + a3 > r_l when the map moves the boundary");

    json params{{"a1", a.a1}, {"a2", a.a2}, {"a3", a.a3}, {"a4", a.a4}, {"x", q.x}, {"y", q.y},
                {"line_start", q.line_start}, {"line_end", q.line_end}, {"beta", number(q.beta)}};
    const double lhs = ensemble_free_energy(g, {zx, q.line_start, zy, q.line_end, q.beta}).value;
    const double rhs = a.a1 * ensemble_free_energy(f, {zx, q.line_start, zy, q.line_end, a.a1 * q.beta}).value +
                       a.a4 * (q.y - q.x) + a.a4 * (q.line_start - q.line_end + 1) / a.a2;
    IdentityReport fwd = equality_report("affine_forward", params, lhs, rhs, tol);
    if (q.reverse_k < 0) return fwd;

    const int k = q.reverse_k;
    if (zx < f.start(k + 1) && touches_boundary(k + 1))
        throw PreconditionError("affine reverse needs a2*x + a3 >= r_{k+1} when the map moves the boundary");
    const double rl = ensemble_reverse_energy(g, zx, zy, k, q.beta).value;
    const double rr = a.a1 * ensemble_reverse_energy(f, zx, zy, k, a.a1 * q.beta).value + a.a4 * (q.y - q.x) - a.a4 * k / a.a2;
    json rparams = params;
    rparams["k"] = k;
    IdentityReport rev = equality_report("affine_reverse", rparams, rl, rr, tol);
    return combine_reports("affine", params, {fwd, rev});
}

}  // namespace loggamma
