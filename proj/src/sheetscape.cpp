#include "loggamma/sheetscape.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "loggamma/error.hpp"
#include "loggamma/logspace.hpp"
#include "loggamma/rng.hpp"

namespace loggamma {

namespace {

std::string window_str(const Window& w) {
    return "columns " + std::to_string(w.col_min) + ".." + std::to_string(w.col_max) + ", rows " + std::to_string(w.row_min) +
           ".." + std::to_string(w.row_max);
}

double two_thirds_power(std::int64_t N) { return std::pow(static_cast<double>(N), 2.0 / 3.0); }

std::int64_t time_index(std::int64_t N, double r, const char* what) {
    const double v = 2.0 * static_cast<double>(N) * r;
    const double rv = std::round(v);
    if (std::fabs(v - rv) > 1e-9 * std::max(1.0, std::fabs(v)))
        throw DomainError(std::string(what) + " = " + std::to_string(r) + " is not on the time lattice (2N r must be an integer)");
    return static_cast<std::int64_t>(rv);
}

}  // namespace

FreeEnergyIndex sheet_index(const ThetaConstants& c, const SheetQuery& q) {
    if (q.N < 1) throw DomainError("N must be positive");
    ScaledCoords sc = coord_maps(c, q.N, q.x, q.y, 0.0);
    FreeEnergyIndex ix;
    ix.start = {sc.x_bar, 1};
    ix.end = {sc.y_hat, 2 * q.N};
    ix.drift = static_cast<double>(sc.y_hat - sc.x_bar + 2 * q.N);
    return ix;
}

FreeEnergyIndex landscape_index(const ThetaConstants& c, const LandscapeQuery& q) {
    if (q.N < 1) throw DomainError("N must be positive");
    if (!(q.s < q.t)) throw DomainError("landscape needs s < t");
    const std::int64_t xb = scale_space(c, q.N, q.x) + 1;
    const std::int64_t yb = scale_space(c, q.N, q.y) + 1;
    const std::int64_t sc = scale_time(q.N, q.s);
    const std::int64_t tc = scale_time(q.N, q.t);
    if (tc - sc < 1) throw DomainError("landscape duration floor(2Nt) - floor(2Ns) must be at least 1");
    FreeEnergyIndex ix;
    ix.start = {xb + sc + 1, sc + 1};
    ix.end = {yb + tc, tc};
    ix.drift = static_cast<double>(yb - xb) + 4.0 * static_cast<double>(q.N) * (q.t - q.s);
    return ix;
}

Window required_window(const FreeEnergyIndex& ix) { return Window{ix.start.col, ix.end.col, ix.start.row, ix.end.row}; }

double unscaled_kernel(const LogGrid& env, double p, const FreeEnergyIndex& ix) {
    if (!reachable(ix.start, ix.end))
        throw DomainError("end (" + std::to_string(ix.end.col) + "," + std::to_string(ix.end.row) + ") is not up-right of start (" +
                          std::to_string(ix.start.col) + "," + std::to_string(ix.start.row) + ")");
    const Window need = required_window(ix);
    if (!env.contains(need.col_min, need.row_min) || !env.contains(need.col_max, need.row_max))
        throw DomainError("environment too small: needs " + window_str(need));
    return log_Z_point(env, ix.start, ix.end) - p * ix.drift;
}

double sheet_unscaled(const LogGrid& env, const ThetaConstants& c, const SheetQuery& q) {
    return unscaled_kernel(env, c.p, sheet_index(c, q));
}

double sheet_value(const LogGrid& env, const ThetaConstants& c, const SheetQuery& q) {
    return c.sheet_scale(q.N) * sheet_unscaled(env, c, q);
}

double landscape_unscaled(const LogGrid& env, const ThetaConstants& c, const LandscapeQuery& q) {
    return unscaled_kernel(env, c.p, landscape_index(c, q));
}

double landscape_value(const LogGrid& env, const ThetaConstants& c, const LandscapeQuery& q) {
    return c.sheet_scale(q.N) * landscape_unscaled(env, c, q);
}

IdentityReport verify_composition(const LogGrid& env, const ThetaConstants& c, const LandscapeQuery& q, double r, double tol) {
    if (!(q.s < r && r < q.t)) throw DomainError("composition needs s < r < t");
    const FreeEnergyIndex whole = landscape_index(c, q);
    const std::int64_t rc = time_index(q.N, r, "r");
    if (rc < whole.start.row || rc >= whole.end.row)
        throw DomainError("composition row floor(2Nr) must lie in [floor(2Ns) + 1, floor(2Nt) - 1]");
    const std::int64_t xb = whole.start.col - whole.start.row;  // x_bar
    const std::int64_t yb = whole.end.col - whole.end.row;      // y_bar
    const double N4 = 4.0 * static_cast<double>(q.N);

    const double lhs = unscaled_kernel(env, c.p, whole);
    std::vector<double> terms;
    for (std::int64_t col = whole.start.col; col <= whole.end.col; ++col) {
        const std::int64_t zl = col - rc, zr = col - rc - 1;
        FreeEnergyIndex left{whole.start, {col, rc}, static_cast<double>(zl - xb) + N4 * (r - q.s)};
        FreeEnergyIndex right{{col, rc + 1}, whole.end, static_cast<double>(yb - zr) + N4 * (q.t - r)};
        terms.push_back(unscaled_kernel(env, c.p, left) + unscaled_kernel(env, c.p, right));
    }
    const double rhs = c.p + log_sum_exp(terms);
    json params{{"N", q.N}, {"x", q.x}, {"s", q.s}, {"y", q.y}, {"t", q.t}, {"r", r}, {"terms", terms.size()}};
    IdentityReport exact = equality_report("composition", params, lhs, rhs, tol);

    const double best = *std::max_element(terms.begin(), terms.end());
    const double excess = lhs - c.p - best;
    const double log_terms = std::log(static_cast<double>(terms.size()));
    const double margin = std::min(excess, log_terms - excess);
    const double bound_slack = 1e-10;
    IdentityReport bound = inequality_report("composition_max_plus", params, margin, margin < -bound_slack ? 1 : 0, 1, bound_slack);
    return combine_reports("composition", params, {exact, bound});
}

double PathMeasure::log_A_at(std::int64_t z) const {
    if (log_mass.empty() || z > y_hat) return kNegInf;
    if (z <= x_bar) return log_A.front();
    return log_A[static_cast<std::size_t>(z - x_bar)];
}

double PathMeasure::log_B_at(std::int64_t z) const {
    if (log_mass.empty() || z < x_bar) return kNegInf;
    if (z >= y_hat) return log_B.back();
    return log_B[static_cast<std::size_t>(z - x_bar)];
}

double PathMeasure::A(std::int64_t z) const { return std::exp(log_A_at(z)); }
double PathMeasure::B(std::int64_t z) const { return std::exp(log_B_at(z)); }

json PathMeasure::to_json() const {
    json j;
    j["k"] = k;
    j["x"] = x;
    j["y"] = y;
    j["x_bar"] = x_bar;
    j["y_hat"] = y_hat;
    j["route"] = route;
    j["log_total"] = number(log_total);
    json z = json::array(), lm = json::array(), a = json::array(), b = json::array();
    for (std::size_t i = 0; i < log_mass.size(); ++i) {
        z.push_back(x_bar + static_cast<std::int64_t>(i));
        lm.push_back(number(log_mass[i]));
        a.push_back(number(std::exp(log_A[i])));
        b.push_back(number(std::exp(log_B[i])));
    }
    j["z"] = std::move(z);
    j["log_mass"] = std::move(lm);
    j["A"] = std::move(a);
    j["B"] = std::move(b);
    return j;
}

std::string PathMeasure::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "z,log_mass,A,B\n";
    for (std::size_t i = 0; i < log_mass.size(); ++i)
        os << x_bar + static_cast<std::int64_t>(i) << ',' << log_mass[i] << ',' << std::exp(log_A[i]) << ',' << std::exp(log_B[i])
           << '\n';
    return os.str();
}

std::int64_t sheet_columns(const ThetaConstants& c, std::int64_t N, double y_max) {
    return std::max<std::int64_t>(2 * N, scale_space(c, N, y_max) + 2 * N);
}

SheetLab::SheetLab(const LogGrid& env, const ThetaConstants& c, std::int64_t N, std::int64_t col_max)
    : c_(c), N_(N), col_max_(col_max) {
    if (N < 1) throw DomainError("N must be positive");
    if (col_max < 2 * N) throw DomainError("sheet lab needs at least 2N columns");
    strip_ = strip(env, col_max, 2 * N);
    wf_ = build_curves(strip_, 2 * N, static_cast<int>(2 * N), col_max);
}

void SheetLab::require_column(std::int64_t col, const char* what) const {
    if (col < 1 || col > col_max_)
        throw DomainError(std::string(what) + " column " + std::to_string(col) + " outside the lab columns 1.." +
                          std::to_string(col_max_));
}

std::int64_t SheetLab::x_bar(double x) const { return scale_space(c_, N_, x) + 1; }
std::int64_t SheetLab::y_hat(double y) const { return scale_space(c_, N_, y) + 2 * N_; }

double SheetLab::h_bar(std::int64_t xb, std::int64_t yh) const {
    require_column(xb, "start");
    require_column(yh, "end");
    return unscaled_kernel(strip_, c_.p, {{xb, 1}, {yh, 2 * N_}, static_cast<double>(yh - xb + 2 * N_)});
}

double SheetLab::h_bar_ensemble(std::int64_t xb, std::int64_t yh) const {
    require_column(xb, "start");
    require_column(yh, "end");
    if (yh < xb) throw DomainError("sheet end precedes the start");
    const int top = static_cast<int>(std::min(xb, 2 * N_));
    return ensemble_free_energy(wf_, {xb, top, yh, 1, 1.0}).value - c_.p * static_cast<double>(yh - xb + 2 * N_);
}

std::vector<double> SheetLab::F_bar_row(int k, std::int64_t x, std::int64_t z_max) const {
    if (k < 1 || k > N_ - 1) throw PreconditionError("components need 1 <= k <= N - 1");
    if (!(k < x)) throw PreconditionError("components need k < x_bar");
    require_column(x, "start");
    require_column(z_max, "end");
    const int top = static_cast<int>(std::min(x, 2 * N_));
    std::vector<double> row = ensemble_to_line(wf_, x, top, k + 1, z_max);
    const double drift = c_.p * (static_cast<double>(x) - two_thirds_power(N_) * k);
    for (std::size_t i = 0; i < row.size(); ++i) row[i] += drift - wf_.value(k + 1, x + static_cast<std::int64_t>(i));
    return row;
}

std::vector<double> SheetLab::G_bar_row(int k, std::int64_t y, std::int64_t z_min) const {
    if (k < 1 || k > N_ - 1) throw PreconditionError("components need 1 <= k <= N - 1");
    if (z_min < k) throw PreconditionError("G component needs z >= k");
    require_column(y, "end");
    std::vector<double> row = ensemble_from_line(wf_, y, 1, k, z_min);
    const double drift = c_.p * (static_cast<double>(y) - two_thirds_power(N_) * k + 2.0 * static_cast<double>(N_));
    for (std::size_t i = 0; i < row.size(); ++i) row[i] += wf_.value(k + 1, z_min + static_cast<std::int64_t>(i)) - drift;
    return row;
}

double SheetLab::F_bar(int k, std::int64_t x, std::int64_t z) const {
    if (z < x) throw DomainError("F component needs z >= x");
    return F_bar_row(k, x, z).back();
}

double SheetLab::G_bar(int k, std::int64_t z, std::int64_t y) const {
    if (z > y) throw DomainError("G component needs z <= y");
    return G_bar_row(k, y, z).front();
}

Components SheetLab::components(int k, double x, double z, double y) const {
    if (!(x > 0)) throw PreconditionError("components need x > 0");
    if (!(z <= y)) throw PreconditionError("components need z <= y");
    Components out;
    out.x_bar = x_bar(x);
    out.z_hat = y_hat(z);
    out.y_hat = y_hat(y);
    if (out.z_hat < out.x_bar) throw PreconditionError("components need z_hat >= x_bar");
    out.F_bar = F_bar(k, out.x_bar, out.z_hat);
    out.G_bar = G_bar(k, out.z_hat, out.y_hat);
    out.F = scale() * out.F_bar;
    out.G = scale() * out.G_bar;
    out.R = out.F - 2.0 * z * x - std::pow(2.0, 1.5) * std::sqrt(static_cast<double>(k) * x);
    return out;
}

PathMeasure SheetLab::measure(int k, std::int64_t xb, std::int64_t yh) const {
    if (k < 1 || k > 2 * N_ - 1) throw DomainError("measure needs 1 <= k <= 2N - 1");
    require_column(xb, "start");
    require_column(yh, "end");
    if (yh < xb) throw DomainError("measure support is empty");
    PathMeasure m;
    m.k = k;
    m.x_bar = xb;
    m.y_hat = yh;
    m.x = c_.lattice_x(N_, xb - 1);
    m.y = c_.lattice_x(N_, yh - 2 * N_);
    const double hb = h_bar(xb, yh);
    const auto width = static_cast<std::size_t>(yh - xb + 1);
    m.log_mass.resize(width);
    if (k < xb && k <= N_ - 1) {
        m.route = "components";
        auto F = F_bar_row(k, xb, yh);
        auto G = G_bar_row(k, yh, xb);
        for (std::size_t i = 0; i < width; ++i) m.log_mass[i] = -hb + F[i] + G[i];
    } else {
        // Split the polymer between rows 2N - k and 2N - k + 1.
        m.route = "raw";
        const std::int64_t row = 2 * N_ - k;
        LogGrid lower = forward_table(strip_, {xb, 1}, {yh, row});
        LogGrid upper = backward_table(strip_, {yh, 2 * N_}, {xb, row + 1});
        const double logZ = hb + c_.p * static_cast<double>(yh - xb + 2 * N_);
        for (std::size_t i = 0; i < width; ++i) {
            const std::int64_t z = xb + static_cast<std::int64_t>(i);
            m.log_mass[i] = lower.at(z, row) + upper.at(z, row + 1) - logZ;
        }
    }
    m.log_A.resize(width);
    m.log_B.resize(width);
    double acc = kNegInf;
    for (std::size_t i = 0; i < width; ++i) m.log_B[i] = acc = log_add(acc, m.log_mass[i]);
    acc = kNegInf;
    for (std::size_t i = width; i-- > 0;) m.log_A[i] = acc = log_add(acc, m.log_mass[i]);
    m.log_total = m.log_B.back();
    return m;
}

PathMeasure SheetLab::measure(int k, double x, double y) const {
    PathMeasure m = measure(k, x_bar(x), y_hat(y));
    m.x = x;
    m.y = y;
    return m;
}

Components components_FGR(const LogGrid& env, const ThetaConstants& c, std::int64_t N, int k, double x, double z, double y) {
    SheetLab lab(env, c, N, sheet_columns(c, N, std::max(y, z)));
    return lab.components(k, x, z, y);
}

PathMeasure path_measure(const LogGrid& env, const ThetaConstants& c, std::int64_t N, int k, double x, double y) {
    SheetLab lab(env, c, N, sheet_columns(c, N, y));
    return lab.measure(k, x, y);
}

IdentityReport verify_sandwich(const SheetLab& lab, const SandwichParams& p, double slack) {
    if (p.N != lab.N()) throw DomainError("sandwich N differs from the lab size");
    if (!(p.x1 > 0 && p.x1 <= p.x2)) throw PreconditionError("sandwich needs 0 < x1 <= x2");
    if (!(p.x > 0)) throw PreconditionError("sandwich needs x > 0");
    if (!(p.y2 >= p.y1 && p.y1 >= p.z)) throw PreconditionError("sandwich needs y2 >= y1 >= z");
    if (!(p.y >= p.z)) throw PreconditionError("sandwich needs y >= z");
    if (!(lab.scale() <= 1.0)) throw PreconditionError("sandwich needs 2^(-1/2) q sigma_p N^(-1/3) <= 1");
    const int k = p.k;
    const std::int64_t x1 = lab.x_bar(p.x1), x2 = lab.x_bar(p.x2), xb = lab.x_bar(p.x);
    const std::int64_t yh = lab.y_hat(p.y), y1 = lab.y_hat(p.y1), y2 = lab.y_hat(p.y2), zh = lab.y_hat(p.z);
    if (!(zh >= x2 && zh <= yh)) throw PreconditionError("sandwich needs y_hat >= z_hat >= x2_bar");
    if (!(zh >= xb)) throw PreconditionError("sandwich needs z_hat >= x_bar");
    const double s = lab.scale();

    const double dF = s * (lab.F_bar(k, x2, zh) - lab.F_bar(k, x1, zh));
    const double dh = s * (lab.h_bar(x2, yh) - lab.h_bar(x1, yh));
    const PathMeasure mu1 = lab.measure(k, x1, yh), mu2 = lab.measure(k, x2, yh);
    const double m1 = dh - mu1.log_A_at(zh) - dF;
    const double m2 = dF - dh - mu2.log_B_at(zh);

    const double dG = s * (lab.G_bar(k, zh, y2) - lab.G_bar(k, zh, y1));
    const double dh2 = s * (lab.h_bar(xb, y2) - lab.h_bar(xb, y1));
    const PathMeasure nu1 = lab.measure(k, xb, y1), nu2 = lab.measure(k, xb, y2);
    // 1 - B(z - 1) and 1 - A(z + 1) are taken as the complementary tails A(z) and B(z).
    const double m3 = -nu1.log_A_at(zh) - (dG - dh2);
    const double m4 = (dG - dh2) - nu2.log_B_at(zh);

    const double margins[] = {m1, m2, m3, m4};
    std::size_t bad = 0;
    for (double m : margins)
        if (m < -slack) ++bad;
    json params{{"N", p.N}, {"k", k}, {"x1", p.x1}, {"x2", p.x2}, {"y", p.y}, {"x", p.x}, {"y1", p.y1}, {"y2", p.y2}, {"z", p.z},
                {"margins", json::array({m1, m2, m3, m4})}};
    return inequality_report("sandwich", std::move(params), *std::min_element(std::begin(margins), std::end(margins)), bad, 4,
                             slack);
}

IdentityReport verify_sandwich(const LogGrid& env, const ThetaConstants& c, const SandwichParams& p, double slack) {
    const double top = std::max({p.y, p.y1, p.y2});
    SheetLab lab(env, c, p.N, sheet_columns(c, p.N, top));
    return verify_sandwich(lab, p, slack);
}

namespace {

struct Tally {
    double worst = std::numeric_limits<double>::infinity();
    std::size_t violations = 0;
    std::size_t samples = 0;
    json worst_at;

    void add(double margin, double slack, const json& where) {
        ++samples;
        if (margin < -slack) ++violations;
        if (margin < worst) {
            worst = margin;
            worst_at = where;
        }
    }

    IdentityReport report(std::string name, json params, double slack) const {
        params["worst_at"] = worst_at;
        return inequality_report(std::move(name), std::move(params), samples ? worst : 0.0, violations, samples, slack);
    }
};

json spec_json(const SheetLab& lab, const SheetSampleSpec& spec) {
    return json{{"N", lab.N()}, {"k", spec.k}, {"seed", spec.seed}, {"x_span", spec.x_span}, {"y_span", spec.y_span}};
}

void check_spec(const SheetLab& lab, const SheetSampleSpec& spec) {
    if (spec.x_span < 0 || spec.y_span < 0) throw DomainError("sample spans must be non-negative");
    if (2 * lab.N() + spec.y_span > lab.col_max()) throw DomainError("sample y span exceeds the lab columns");
    if (spec.k + 1 + spec.x_span > 2 * lab.N() + spec.y_span) throw DomainError("sample x span exceeds the sheet width");
}

}  // namespace

IdentityReport sample_sandwich(const SheetLab& lab, const SheetSampleSpec& spec, double slack) {
    check_spec(lab, spec);
    RandomStream rng(spec.seed);
    const std::int64_t N = lab.N(), lo = spec.k + 1;
    const auto& c = lab.constants();
    Tally t;
    for (std::size_t s = 0; s < spec.count; ++s) {
        std::int64_t xs[3] = {rng.uniform_int(lo, lo + spec.x_span), rng.uniform_int(lo, lo + spec.x_span),
                              rng.uniform_int(lo, lo + spec.x_span)};
        std::sort(xs, xs + 2);
        std::int64_t ys[2] = {rng.uniform_int(2 * N, 2 * N + spec.y_span), rng.uniform_int(2 * N, 2 * N + spec.y_span)};
        std::sort(ys, ys + 2);
        const std::int64_t x_hi = std::max(xs[1], xs[2]);
        if (x_hi > ys[0]) continue;
        const std::int64_t zh = rng.uniform_int(x_hi, ys[0]);
        SandwichParams p;
        p.N = N;
        p.k = spec.k;
        p.x1 = c.lattice_x(N, xs[0] - 1);
        p.x2 = c.lattice_x(N, xs[1] - 1);
        p.x = c.lattice_x(N, xs[2] - 1);
        p.y1 = c.lattice_x(N, ys[0] - 2 * N);
        p.y2 = c.lattice_x(N, ys[1] - 2 * N);
        p.y = p.y1;
        p.z = c.lattice_x(N, zh - 2 * N);
        IdentityReport r = verify_sandwich(lab, p, slack);
        for (const auto& m : r.params["margins"])
            t.add(m.get<double>(), slack, json{{"x1_bar", xs[0]}, {"x2_bar", xs[1]}, {"x_bar", xs[2]}, {"y1_hat", ys[0]},
                                               {"y2_hat", ys[1]}, {"z_hat", zh}});
    }
    return t.report("sandwich", spec_json(lab, spec), slack);
}

IdentityReport sample_sheet_quadrangle(const SheetLab& lab, const SheetSampleSpec& spec, double slack) {
    check_spec(lab, spec);
    RandomStream rng(spec.seed);
    const std::int64_t N = lab.N();
    Tally t;
    for (std::size_t s = 0; s < spec.count; ++s) {
        std::int64_t xs[2] = {rng.uniform_int(1, 1 + spec.x_span), rng.uniform_int(1, 1 + spec.x_span)};
        std::int64_t ys[2] = {rng.uniform_int(2 * N, 2 * N + spec.y_span), rng.uniform_int(2 * N, 2 * N + spec.y_span)};
        std::sort(xs, xs + 2);
        std::sort(ys, ys + 2);
        if (xs[1] > ys[0]) continue;
        const double sc = lab.scale();
        const double margin = sc * (lab.h_bar(xs[0], ys[0]) + lab.h_bar(xs[1], ys[1]) - lab.h_bar(xs[0], ys[1]) -
                                    lab.h_bar(xs[1], ys[0]));
        t.add(margin, slack, json{{"x1_bar", xs[0]}, {"x2_bar", xs[1]}, {"y1_hat", ys[0]}, {"y2_hat", ys[1]}});
    }
    return t.report("sheet_quadrangle", spec_json(lab, spec), slack);
}

IdentityReport sample_component_monotonicity(const SheetLab& lab, const SheetSampleSpec& spec, double slack) {
    check_spec(lab, spec);
    RandomStream rng(spec.seed);
    const std::int64_t N = lab.N(), lo = spec.k + 1;
    const std::int64_t z_max = 2 * N + spec.y_span;
    Tally t;
    for (std::size_t s = 0; s < spec.count; ++s) {
        std::int64_t xs[2] = {rng.uniform_int(lo, lo + spec.x_span), rng.uniform_int(lo, lo + spec.x_span)};
        std::sort(xs, xs + 2);
        auto F1 = lab.F_bar_row(spec.k, xs[0], z_max);
        auto F2 = lab.F_bar_row(spec.k, xs[1], z_max);
        const std::size_t off = static_cast<std::size_t>(xs[1] - xs[0]);
        for (std::size_t i = 0; i + 1 < F2.size(); ++i) {
            const double d0 = F2[i] - F1[i + off], d1 = F2[i + 1] - F1[i + off + 1];
            t.add(d1 - d0, slack, json{{"part", "F"}, {"x1_bar", xs[0]}, {"x2_bar", xs[1]}, {"z_hat", xs[1] + static_cast<std::int64_t>(i)}});
        }

        std::int64_t ys[2] = {rng.uniform_int(2 * N, z_max), rng.uniform_int(2 * N, z_max)};
        std::sort(ys, ys + 2);
        auto G1 = lab.G_bar_row(spec.k, ys[0], spec.k);
        auto G2 = lab.G_bar_row(spec.k, ys[1], spec.k);
        for (std::size_t i = 0; i + 1 < G1.size(); ++i) {
            const double d0 = G2[i] - G1[i], d1 = G2[i + 1] - G1[i + 1];
            t.add(d1 - d0, slack, json{{"part", "G"}, {"y1_hat", ys[0]}, {"y2_hat", ys[1]}, {"z_hat", spec.k + static_cast<std::int64_t>(i)}});
        }
    }
    return t.report("component_monotonicity", spec_json(lab, spec), slack);
}

IdentityReport sample_measure_normalization(const SheetLab& lab, const SheetSampleSpec& spec, double tol) {
    check_spec(lab, spec);
    RandomStream rng(spec.seed);
    const std::int64_t N = lab.N();
    Tally t;
    std::size_t raw = 0;
    for (std::size_t s = 0; s < spec.count; ++s) {
        const std::int64_t xb = rng.uniform_int(1, spec.k + 1 + spec.x_span);
        const std::int64_t yh = rng.uniform_int(std::max(xb, 2 * N), 2 * N + spec.y_span);
        PathMeasure m = lab.measure(spec.k, xb, yh);
        if (m.route == "raw") ++raw;
        const json where{{"x_bar", xb}, {"y_hat", yh}, {"route", m.route}};
        t.add(-std::fabs(std::exp(m.log_total) - 1.0), tol, where);
        for (std::int64_t z = xb; z <= yh; ++z)
            t.add(-std::fabs(m.A(z) + m.B(z - 1) - 1.0), tol, where);
    }
    json params = spec_json(lab, spec);
    params["raw_route_samples"] = raw;
    return t.report("measure_normalization", std::move(params), tol);
}

}  // namespace loggamma
