// SPDX-License-Identifier: Apache-2.0
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "cli.hpp"
#include "wmod/bounds.hpp"
#include "wmod/erdelyi.hpp"
#include "wmod/errors.hpp"
#include "wmod/hyp2f1.hpp"
#include "wmod/monotone.hpp"
#include "wmod/sampling.hpp"
#include "wmod/whittaker.hpp"

namespace wmod::cli {
namespace {

Json cj(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Complex cx(const Json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

double real_of(const Json& p, const char* key) { return p.at(key).get<double>(); }

SectorPoint point(const Json& p, const char* name) {
    if (p.contains(name)) {
        return SectorPoint(cx(p.at(name)));
    }
    return SectorPoint::polar(real_of(p, "mod"), real_of(p, "arg"));
}

// NaN and infinities have no JSON literal
Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double residual(Complex lhs, Complex rhs) { return std::abs(lhs - rhs) / std::abs(lhs); }

struct Context {
    const RunConfig& cfg;
    const Json& p;
    RunResult& out;
    Json& outputs;
    Json& warnings;
    unsigned threads;
};

void warn_envelope(Context& c, Complex k) {
    if (!within_supported_envelope(WhittakerParams(k, 0.0))) {
        std::ostringstream s;
        s << "|Im k| = " << std::abs(k.imag()) << " is outside the supported envelope |Im k| <= " << kImKEnvelope
          << "; accuracy is not guaranteed";
        c.warnings.push_back(s.str());
    }
}

std::variant<WhittakerParams, BesselParams> family(Context& c) {
    if (c.p.contains("nu")) {
        return BesselParams(real_of(c.p, "nu"));
    }
    const Complex k = cx(c.p.at("k"));
    warn_envelope(c, k);
    return WhittakerParams(k, real_of(c.p, "m"));
}

// ---------------------------------------------------------------- evaluation

void eval_w(Context& c) {
    const Complex k = cx(c.p.at("k"));
    warn_envelope(c, k);
    const SectorPoint z = point(c.p, "z");
    z.require_cut_plane();
    const Complex w = whittaker_w(WhittakerParams(k, real_of(c.p, "m")), z, c.cfg.tol);
    c.outputs["w"] = cj(w);
    c.outputs["abs"] = std::abs(w);
}

void eval_k(Context& c) {
    const SectorPoint z = point(c.p, "z");
    z.require_cut_plane();
    const Complex v = bessel_k(BesselParams(real_of(c.p, "nu")), z, c.cfg.tol);
    c.outputs["k"] = cj(v);
    c.outputs["abs"] = std::abs(v);
}

void hyp2f1(Context& c) {
    const Hyp2F1Params hp(cx(c.p.at("a")), cx(c.p.at("b")), cx(c.p.at("c")));
    const Complex z = cx(c.p.at("z"));
    const Complex v = z.imag() == 0.0 && z.real() < 1.0 ? hyp2f1_eval(hp, z.real(), c.cfg.tol)
                                                          : hyp2f1_general_arg(hp, z, c.cfg.tol);
    c.outputs["value"] = cj(v);
}

void theta(Context& c) { c.outputs["theta"] = theta_from_p(real_of(c.p, "p")); }

Json sector_json(const SectorCertificate& s) {
    Json j;
    switch (s.p.kind) {
        case NegZeroKind::Found:
            j["kind"] = "Found";
            break;
        case NegZeroKind::NoneInSearchRange:
            j["kind"] = "NoneInSearchRange";
            break;
        case NegZeroKind::AnalyticNegInfinity:
            j["kind"] = "AnalyticNegInfinity";
            break;
    }
    const bool found = s.p.kind == NegZeroKind::Found;
    j["p"] = found ? Json(s.p.p) : Json(nullptr);
    j["bracket"] = {{"lo", found ? Json(s.p.bracket.first) : Json(nullptr)},
                    {"hi", found ? Json(s.p.bracket.second) : Json(nullptr)}};
    j["theta"] = s.theta;
    j["theta_is_exact_pi"] = s.theta_is_exact_pi;
    j["grid_points_checked"] = s.p.grid_points_checked;
    return j;
}

SectorCertificate sector_for(const std::variant<WhittakerParams, BesselParams>& params, double floor,
                             const TolerancePolicy& tol) {
    return std::visit([&](const auto& q) { return sector_certificate(q, floor, tol); }, params);
}

void pzero(Context& c) {
    const auto cert = sector_for(family(c), real_of(c.p, "floor"), c.cfg.tol);
    c.outputs = sector_json(cert);
    if (cert.p.kind == NegZeroKind::NoneInSearchRange) {
        c.warnings.push_back("no zero above the search floor; theta is the angle for the floor");
        c.out.exit_code = exit_code::kInconclusive;
    }
}

// ---------------------------------------------------------------- identities

struct IdentitySample {
    Complex k;
    std::optional<Complex> l;
    double m;
    SectorPoint x;
    std::optional<SectorPoint> y;
    double t;
    Complex lhs;
    Complex rhs;
    double rhs_err;
};

IdentitySample identity_single(const std::string& form, Complex k, std::optional<Complex> l, double m,
                               const SectorPoint& x, std::optional<SectorPoint> y, double t,
                               const TolerancePolicy& tol) {
    IdentitySample s{k, l, m, x, y, t, 0.0, 0.0, 0.0};
    if (form == "modulus") {
        const ModulusProductParams mp(k, m, x, t);
        const QuadratureResult r = erdelyi_rhs_modulus(mp, tol);
        s.lhs = modulus_lhs(mp, tol);
        s.rhs = r.value;
        s.rhs_err = r.abs_err_estimate;
    } else if (form == "general") {
        const GeneralProductParams gp(k, *l, m, x, *y, t);
        const QuadratureResult r = erdelyi_rhs_general(gp, tol);
        s.lhs = general_lhs(gp, tol);
        s.rhs = r.value;
        s.rhs_err = r.abs_err_estimate;
    } else {
        const QuadratureResult r = bessel_rhs(m, x, t, tol);
        s.lhs = bessel_lhs(m, x, t, tol);
        s.rhs = r.value;
        s.rhs_err = r.abs_err_estimate;
    }
    return s;
}

const std::vector<std::string> kIdentityColumns = {"index", "k_re",   "k_im",   "l_re",   "l_im",    "m",
                                                   "x_re",  "x_im",   "y_re",   "y_im",   "t",       "lhs_re",
                                                   "lhs_im", "rhs_re", "rhs_im", "rhs_err", "residual", "pass"};

std::vector<Json> identity_row(std::size_t index, const std::string& form, const IdentitySample& s,
                               double threshold) {
    const bool bessel = form == "bessel";
    const double res = residual(s.lhs, s.rhs);
    const auto opt = [](bool present, double v) { return present ? Json(v) : Json(nullptr); };
    return {index,
            opt(!bessel, s.k.real()),
            opt(!bessel, s.k.imag()),
            opt(s.l.has_value(), s.l ? s.l->real() : 0.0),
            opt(s.l.has_value(), s.l ? s.l->imag() : 0.0),
            s.m,
            s.x.real(),
            s.x.imag(),
            opt(s.y.has_value(), s.y ? s.y->real() : 0.0),
            opt(s.y.has_value(), s.y ? s.y->imag() : 0.0),
            s.t,
            s.lhs.real(),
            s.lhs.imag(),
            s.rhs.real(),
            s.rhs.imag(),
            s.rhs_err,
            num(res),
            res < threshold};
}

void identity_check(Context& c) {
    const std::string form = c.p.at("form");
    const double threshold = real_of(c.p, "max_residual");
    if (!c.p.contains("samples")) {
        std::optional<Complex> l;
        std::optional<SectorPoint> y;
        Complex k = 0.0;
        double m = 0.0;
        if (form == "bessel") {
            m = real_of(c.p, "nu");
        } else {
            k = cx(c.p.at("k"));
            warn_envelope(c, k);
            m = real_of(c.p, "m");
            if (form == "general") {
                l = cx(c.p.at("l"));
                warn_envelope(c, *l);
                y = point(c.p, "y");
            }
        }
        const IdentitySample s = identity_single(form, k, l, m, point(c.p, "x"), y, real_of(c.p, "t"), c.cfg.tol);
        const double res = residual(s.lhs, s.rhs);
        c.outputs["lhs"] = cj(s.lhs);
        c.outputs["rhs"] = cj(s.rhs);
        c.outputs["rhs_err"] = s.rhs_err;
        c.outputs["residual"] = num(res);
        c.outputs["pass"] = res < threshold;
        c.out.exit_code = res < threshold ? exit_code::kOk : exit_code::kViolation;
        return;
    }

    const auto samples = c.p.at("samples").get<std::size_t>();
    const double max_arg = real_of(c.p, "max_arg");
    if (!(max_arg >= 0.0 && max_arg < kPi)) {
        throw DomainError("--max-arg must lie in [0, pi)");
    }
    std::vector<std::vector<Json>> rows(samples);
    std::vector<int> redraws(samples, 0);
    std::vector<std::string> failures(samples);
    parallel_for(samples, c.threads, [&](std::size_t i) {
        SampleStream draw(c.cfg.seed, i);
        const auto polar = [&]() {
            const double r = draw.uniform(0.1, 5.0);
            return SectorPoint::polar(r, draw.uniform(-max_arg, max_arg));
        };
        try {
            if (form == "modulus") {
                const Complex k(draw.uniform(-2.0, 0.49), draw.uniform(-5.0, 5.0));
                const double m = draw.uniform(-3.0, 3.0);
                const SectorPoint x = polar();
                const double t = draw.uniform(0.1, 5.0);
                rows[i] = identity_row(i, form, identity_single(form, k, {}, m, x, {}, t, c.cfg.tol), threshold);
            } else if (form == "bessel") {
                const double nu = draw.uniform(-3.0, 3.0);
                const SectorPoint x = polar();
                const double t = draw.uniform(0.1, 5.0);
                rows[i] = identity_row(i, form, identity_single(form, 0.0, {}, nu, x, {}, t, c.cfg.tol), threshold);
            } else {
                const Complex k(draw.uniform(-2.0, 0.49), draw.uniform(-5.0, 5.0));
                const Complex l(draw.uniform(-2.0, 0.49), draw.uniform(-5.0, 5.0));
                const double m = draw.uniform(-3.0, 3.0);
                const double t = draw.uniform(0.1, 5.0);
                // points whose integrand path would cross the branch cut are redrawn
                for (int attempt = 0;; ++attempt) {
                    const SectorPoint x = polar();
                    const SectorPoint y = polar();
                    try {
                        rows[i] = identity_row(i, form, identity_single(form, k, l, m, x, y, t, c.cfg.tol), threshold);
                        break;
                    } catch (const BranchError&) {
                        if (attempt == 99) {
                            throw;
                        }
                        ++redraws[i];
                    }
                }
            }
        } catch (const NonConvergence& e) {
            failures[i] = e.what();
        }
    });

    double max_res = 0.0;
    std::size_t failed = 0;
    std::size_t errors = 0;
    c.out.table.columns = kIdentityColumns;
    Json error_list = Json::array();
    for (std::size_t i = 0; i < samples; ++i) {
        if (!failures[i].empty()) {
            ++errors;
            error_list.push_back({{"index", i}, {"message", failures[i]}});
            std::vector<Json> row(kIdentityColumns.size(), nullptr);
            row[0] = i;
            row.back() = false;
            c.out.table.rows.push_back(row);
            continue;
        }
        const Json& res = rows[i][16];
        if (res.is_null() || !rows[i][17].get<bool>()) {
            ++failed;
        }
        if (res.is_number()) {
            max_res = std::max(max_res, res.get<double>());
        }
        c.out.table.rows.push_back(rows[i]);
    }
    int total_redraws = 0;
    for (int r : redraws) {
        total_redraws += r;
    }
    c.outputs["samples"] = samples;
    c.outputs["failures"] = failed;
    c.outputs["errors"] = error_list;
    c.outputs["max_residual"] = max_res;
    if (form == "general") {
        c.outputs["branch_redraws"] = total_redraws;
    }
    c.outputs["pass"] = failed == 0 && errors == 0;
    c.out.exit_code = failed > 0 ? exit_code::kViolation : errors > 0 ? exit_code::kInconclusive : exit_code::kOk;
}

// ---------------------------------------------------------------- bounds

int bound_exit(BoundStatus s) {
    switch (s) {
        case BoundStatus::Holds:
            return exit_code::kOk;
        case BoundStatus::Violated:
            return exit_code::kViolation;
        case BoundStatus::Unverifiable:
            break;
    }
    return exit_code::kInconclusive;
}

Json report_json(const BoundReport& r) {
    return {{"quotient_sq", num(r.quotient_sq)},
            {"bound", r.bound},
            {"slack", num(r.slack)},
            {"holds", r.holds},
            {"status", to_string(r.status)}};
}

const std::vector<std::string> kBoundColumns = {"index",       "k_re",  "k_im",  "m",      "x_re",
                                                "x_im",        "tau",   "quotient_sq", "bound", "slack",
                                                "status",      "laplace_at_one", "laplace_at_tau", "laplace_holds"};

void bound_check(Context& c) {
    if (!c.p.contains("samples")) {
        const auto params = family(c);
        const BoundQuery q(params, point(c.p, "x"), real_of(c.p, "tau"));
        const BoundReport r = evaluate_bound(q, c.cfg.tol);
        c.outputs = report_json(r);
        c.out.exit_code = bound_exit(r.status);
        if (c.p.at("laplace").get<bool>()) {
            const auto lm = laplace_monotonicity(std::get<WhittakerParams>(params), q.x, q.tau, c.cfg.tol);
            c.outputs["laplace"] = {{"at_one", lm.at_one}, {"at_tau", lm.at_tau}, {"holds", lm.holds}};
            if (!lm.holds) {
                c.out.exit_code = exit_code::kViolation;
            }
        }
        return;
    }
    BoundSweepConfig cfg;
    cfg.family = c.p.at("family") == "bessel" ? SweepFamily::Bessel : SweepFamily::Whittaker;
    cfg.samples = c.p.at("samples").get<std::size_t>();
    cfg.seed = c.cfg.seed;
    cfg.tau = {1.0, real_of(c.p, "tau_max")};
    cfg.laplace_check = c.p.at("laplace").get<bool>() && cfg.family == SweepFamily::Whittaker;
    cfg.threads = c.threads;
    const auto samples = bound_sweep(cfg, c.cfg.tol);
    const BoundSweepSummary sum = summarize(samples);

    const bool bessel = cfg.family == SweepFamily::Bessel;
    c.out.table.columns = kBoundColumns;
    for (const auto& s : samples) {
        c.out.table.rows.push_back({s.index, bessel ? Json(nullptr) : Json(s.k.real()),
                                    bessel ? Json(nullptr) : Json(s.k.imag()), s.m, s.x.real(), s.x.imag(), s.tau,
                                    num(s.report.quotient_sq), s.report.bound, num(s.report.slack),
                                    to_string(s.report.status), s.laplace ? Json(s.laplace->at_one) : Json(nullptr),
                                    s.laplace ? Json(s.laplace->at_tau) : Json(nullptr),
                                    s.laplace ? Json(s.laplace->holds) : Json(nullptr)});
    }
    c.outputs["samples"] = sum.samples;
    c.outputs["violations"] = sum.violations;
    c.outputs["unverifiable"] = sum.unverifiable;
    c.outputs["laplace_violations"] = sum.laplace_violations;
    c.outputs["min_slack"] = sum.min_slack;
    c.out.exit_code = sum.violations + sum.laplace_violations > 0 ? exit_code::kViolation
                      : sum.unverifiable > 0                     ? exit_code::kInconclusive
                                                                 : exit_code::kOk;
}

// ---------------------------------------------------------------- monotonicity

Json moment_json(const MomentEntry& e) {
    return {{"n", e.n}, {"t", e.t}, {"value", e.value}, {"abs_err", e.abs_err}};
}

void certify(Context& c) {
    const auto params = family(c);
    const SectorPoint x = point(c.p, "x");
    const int n_max = c.p.at("n_max").get<int>();
    const auto grid = c.p.at("t_grid").get<std::vector<double>>();
    const bool kmod = c.p.at("kmod").get<bool>();
    const SectorCertificate sector = sector_for(params, kDefaultSearchFloor, c.cfg.tol);
    const CMCertificate cert =
        kmod ? kmod_cm_check(std::get<BesselParams>(params).nu, x, n_max, grid, c.cfg.tol)
             : std::visit([&](const auto& q) { return certify_cm(q, x, n_max, grid, c.cfg.tol); }, params);

    c.outputs["verdict"] = to_string(cert.verdict);
    Json s = sector_json(sector);
    s["in_sector"] = in_certified_sector(sector, x);
    c.outputs["sector"] = s;
    c.outputs["audit"] = {{"nodes", cert.audit.nodes},
                          {"negative_nodes", cert.audit.negative_nodes},
                          {"min_hyp_factor", num(cert.audit.min_hyp_factor)},
                          {"u_at_min", cert.audit.u_at_min},
                          {"min_hyp_argument", num(cert.audit.min_hyp_argument)},
                          {"nonnegative", cert.audit.nonnegative()}};
    c.outputs["hyp_factor_at_peak"] = cert.hyp_factor_at_peak ? Json(*cert.hyp_factor_at_peak) : Json(nullptr);
    c.outputs["violation"] = cert.violation ? moment_json(*cert.violation) : Json(nullptr);
    c.out.table.columns = {"n", "t", "value", "abs_err"};
    for (const auto& e : cert.moments) {
        c.out.table.rows.push_back({e.n, e.t, e.value, e.abs_err});
    }
    switch (cert.verdict) {
        case CMVerdict::CertifiedPositive:
            c.out.exit_code = exit_code::kOk;
            break;
        case CMVerdict::ViolationFound:
            c.out.exit_code = exit_code::kViolation;
            break;
        case CMVerdict::Inconclusive:
            c.out.exit_code = exit_code::kInconclusive;
            break;
    }
}

// ---------------------------------------------------------------- grid sweep

void grid_sweep(Context& c) {
    const std::string quantity = c.p.at("quantity");
    const std::string over = c.p.at("over");
    const auto steps = c.p.at("steps").get<std::size_t>();
    const double from = real_of(c.p, "from");
    const double to = real_of(c.p, "to");
    const auto grid_at = [&](std::size_t i) {
        return steps < 2 ? from : from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1);
    };
    const auto params = quantity == "k" ? std::variant<WhittakerParams, BesselParams>(BesselParams(real_of(c.p, "nu")))
                                        : family(c);
    const auto x_at = [&](double v) {
        if (over == "arg") {
            return SectorPoint::polar(real_of(c.p, "mod"), v);
        }
        if (over == "mod") {
            return SectorPoint::polar(v, real_of(c.p, "arg"));
        }
        return point(c.p, "x");
    };

    std::vector<std::string> tail;
    if (quantity == "w" || quantity == "k") {
        tail = {"value_re", "value_im", "abs"};
    } else if (quantity == "quotient") {
        tail = {"quotient_sq", "bound", "status"};
    } else if (quantity == "factor") {
        tail = {"value"};
    } else {
        tail = {"value", "abs_err"};
    }
    std::optional<Hyp2F1> factor;
    if (quantity == "factor") {
        const auto wp = std::visit(
            [](const auto& q) {
                if constexpr (std::is_same_v<std::decay_t<decltype(q)>, BesselParams>) {
                    return WhittakerParams(0.0, q.nu);
                } else {
                    return q;
                }
            },
            params);
        factor.emplace(sector_hyp_params(wp), c.cfg.tol);
    }

    std::vector<std::vector<Json>> rows(steps);
    parallel_for(steps, c.threads, [&](std::size_t i) {
        const double v = grid_at(i);
        std::vector<Json> row = {i, v};
        if (quantity == "w" || quantity == "k") {
            const SectorPoint x = x_at(v);
            x.require_cut_plane();
            const Complex w = quantity == "w" ? whittaker_w(std::get<WhittakerParams>(params), x, c.cfg.tol)
                                              : bessel_k(std::get<BesselParams>(params), x, c.cfg.tol);
            row.insert(row.end(), {w.real(), w.imag(), std::abs(w)});
        } else if (quantity == "quotient") {
            const double tau = over == "tau" ? v : real_of(c.p, "tau");
            const BoundReport r = evaluate_bound(BoundQuery(params, x_at(v), tau), c.cfg.tol);
            row.insert(row.end(), {num(r.quotient_sq), r.bound, to_string(r.status)});
        } else if (quantity == "factor") {
            row.push_back((*factor)(v).real());
        } else {
            const double t = over == "t" ? v : real_of(c.p, "t");
            const int n = c.p.at("n").get<int>();
            const QuadratureResult q =
                std::visit([&](const auto& w) { return cm_moment(w, x_at(v), n, t, c.cfg.tol); }, params);
            row.insert(row.end(), {q.value.real(), q.abs_err_estimate});
        }
        rows[i] = std::move(row);
    });
    c.out.table.columns = {"index", over};
    c.out.table.columns.insert(c.out.table.columns.end(), tail.begin(), tail.end());
    c.out.table.rows = std::move(rows);
    c.outputs["points"] = steps;
}

const std::map<std::string, std::function<void(Context&)>>& dispatch() {
    static const std::map<std::string, std::function<void(Context&)>> table = {
        {"eval-w", eval_w},           {"eval-k", eval_k},           {"hyp2f1", hyp2f1},
        {"identity-check", identity_check}, {"bound-check", bound_check}, {"pzero", pzero},
        {"theta", theta},             {"certify-cm", certify},      {"sweep", grid_sweep},
    };
    return table;
}

// ---------------------------------------------------------------- rendering

void flatten(const Json& j, const std::string& prefix, std::vector<std::string>& keys, std::vector<Json>& values) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            flatten(v, prefix.empty() ? k : prefix + "_" + k, keys, values);
        }
        return;
    }
    keys.push_back(prefix);
    values.push_back(j);
}

std::string cell(const Json& v) {
    if (v.is_null()) {
        return "";
    }
    if (v.is_string()) {
        return v.get<std::string>();
    }
    return v.dump();
}

std::string csv_line(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        line += (i ? "," : "") + cells[i];
    }
    return line + "\n";
}

Json rows_as_objects(const Table& t) {
    Json rows = Json::array();
    for (const auto& r : t.rows) {
        Json o = Json::object();
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            o[t.columns[i]] = r[i];
        }
        rows.push_back(std::move(o));
    }
    return rows;
}

}  // namespace

RunResult run(const RunConfig& config) {
    config.tol.validate();
    const auto it = dispatch().find(config.command);
    if (it == dispatch().end()) {
        throw UsageError("unknown command '" + config.command + "'");
    }
    RunResult result;
    Json outputs = Json::object();
    Json warnings = Json::array();
    Context ctx{config, config.params, result, outputs, warnings, thread_count_from_env()};
    const auto start = std::chrono::steady_clock::now();
    it->second(ctx);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    if (!result.table.columns.empty()) {
        outputs[config.command == "certify-cm" ? "moments" : "rows"] = rows_as_objects(result.table);
    }
    Json inputs = config.params;
    inputs["rel_tol"] = config.tol.rel_tol;
    inputs["abs_tol"] = config.tol.abs_tol;
    result.envelope = Json{{"schema", "1"},        {"version", WMOD_VERSION}, {"command", config.command},
                           {"inputs", inputs},     {"outputs", outputs},      {"warnings", warnings},
                           {"exit_code", result.exit_code}, {"timing_ms", std::round(ms * 1000.0) / 1000.0}};
    return result;
}

std::string render(const RunResult& result, OutputFormat format) {
    if (format == OutputFormat::Json) {
        return result.envelope.dump(2) + "\n";
    }
    if (format == OutputFormat::Csv) {
        std::string text;
        if (!result.table.columns.empty()) {
            text = csv_line(result.table.columns);
            for (const auto& r : result.table.rows) {
                std::vector<std::string> cells;
                for (const auto& v : r) {
                    cells.push_back(cell(v));
                }
                text += csv_line(cells);
            }
            return text;
        }
        std::vector<std::string> keys;
        std::vector<Json> values;
        flatten(result.envelope.at("outputs"), "", keys, values);
        std::vector<std::string> cells;
        for (const auto& v : values) {
            cells.push_back(cell(v));
        }
        return csv_line(keys) + csv_line(cells);
    }

    std::ostringstream s;
    s << result.envelope.at("command").get<std::string>() << "\n";
    Json summary = result.envelope.at("outputs");
    summary.erase("rows");
    summary.erase("moments");
    std::vector<std::string> keys;
    std::vector<Json> values;
    flatten(summary, "", keys, values);
    std::size_t width = 0;
    for (const auto& k : keys) {
        width = std::max(width, k.size());
    }
    for (std::size_t i = 0; i < keys.size(); ++i) {
        s << "  " << keys[i] << std::string(width - keys[i].size() + 2, ' ') << cell(values[i]) << "\n";
    }
    if (!result.table.columns.empty()) {
        s << "\n" << csv_line(result.table.columns);
        for (const auto& r : result.table.rows) {
            std::vector<std::string> cells;
            for (const auto& v : r) {
                cells.push_back(v.is_number_float() ? [&] {
                    char buf[32];
                    std::snprintf(buf, sizeof buf, "%.10g", v.get<double>());
                    return std::string(buf);
                }()
                                                    : cell(v));
            }
            s << csv_line(cells);
        }
    }
    for (const auto& w : result.envelope.at("warnings")) {
        s << "warning: " << w.get<std::string>() << "\n";
    }
    return s.str();
}

Invocation invoke(const std::vector<std::string>& args) {
    Invocation inv;
    try {
        const RunConfig cfg = parse_args(args);
        const RunResult result = run(cfg);
        inv.out = render(result, cfg.format);
        inv.exit_code = result.exit_code;
        for (const auto& w : result.envelope.at("warnings")) {
            inv.err += "warning: " + w.get<std::string>() + "\n";
        }
    } catch (const HelpRequested& h) {
        inv.out = h.what();
        inv.exit_code = exit_code::kOk;
    } catch (const UsageError& e) {
        inv.err = std::string("usage error: ") + e.what() + "\n";
        inv.exit_code = exit_code::kUsage;
    } catch (const DomainError& e) {
        inv.err = std::string("domain error: ") + e.what() + "\n";
        inv.exit_code = exit_code::kUsage;
    } catch (const BranchError& e) {
        inv.err = std::string("branch error: ") + e.what() + "\n";
        inv.exit_code = exit_code::kUsage;
    } catch (const NonConvergence& e) {
        inv.err = std::string("no convergence: ") + e.what() + "\n";
        inv.exit_code = exit_code::kInconclusive;
    } catch (const DivisionError& e) {
        inv.err = std::string("division error: ") + e.what() + "\n";
        inv.exit_code = exit_code::kInconclusive;
    } catch (const std::exception& e) {
        inv.err = std::string("error: ") + e.what() + "\n";
        inv.exit_code = exit_code::kUsage;
    }
    return inv;
}

}  // namespace wmod::cli
