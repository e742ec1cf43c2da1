// Copyright 2026 The wvkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wvkit_cli/runner.h"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <set>
#include <sstream>
#include <thread>

#include "wvkit/analytics.h"
#include "wvkit/estimator.h"
#include "wvkit/purify.h"
#include "wvkit/twotime.h"

namespace wvkit::cli {

namespace {

constexpr double kUndefinedTolerance = 1e-12;

void put_complex(json &summary, const std::string &name, complex z) {
    summary[name + "_re"] = z.real();
    summary[name + "_im"] = z.imag();
}

// Variant after resolving `exact` to the single- or double-observable circuit.
Variant circuit_variant(const ExperimentConfig &c) {
    if (c.variant == Variant::kExact) {
        return c.observable_b ? Variant::kFig1b : Variant::kFig1a;
    }
    return c.variant;
}

UnbiasedObservable product_observable(const UnbiasedObservable &a, const UnbiasedObservable &b) {
    std::vector<double> values;
    for (double x : a.values()) {
        for (double y : b.values()) {
            values.push_back(x * y);
        }
    }
    return UnbiasedObservable::claim(
        Povm::product(a.povm(), b.povm()), std::move(values), kron(a.observable(), b.observable()));
}

ComplexMatrix operator_or(const std::optional<ComplexMatrix> &op, const std::optional<UnbiasedObservable> &obs,
                          size_t d) {
    if (op) {
        return *op;
    }
    if (obs) {
        return obs->observable();
    }
    return identity(d);
}

struct ExactValue {
    std::string quantity;
    complex value;
    /// Normalization of the induced measure (Tr[rho_in rho_fin] or Tr[rho SWAP]).
    double normalization;
    json detail;
};

ExactValue exact_value(const ExperimentConfig &c) {
    Variant v = circuit_variant(c);
    ExactValue out;
    switch (v) {
        case Variant::kFig1a: {
            const auto &obs = *c.observable;
            WeakValue w = weak_value(obs.observable(), *c.rho_in, *c.rho_fin);
            complex via = exact_estimate_weak_value(obs, *c.rho_in, *c.rho_fin);
            HermitianEigen eig = hermitian_eigen(obs.observable());
            double lo = eig.values(0), hi = eig.values(eig.values.size() - 1);
            out = {"weak_value", w.value, w.overlap, {}};
            out.detail = {
                {"quantity", out.quantity},
                {"value", complex_to_json(w.value)},
                {"overlap", w.overlap},
                {"via_distribution", complex_to_json(via)},
                {"residual", std::abs(via - w.value)},
                {"spectrum", {lo, hi}},
                {"anomalous", w.value.real() < lo - 1e-12 || w.value.real() > hi + 1e-12},
            };
            break;
        }
        case Variant::kFig1b: {
            const auto &a = *c.observable, &b = *c.observable_b;
            complex w2 = double_weak_value(a.observable(), b.observable(), *c.rho_in, *c.rho_fin);
            complex via = exact_estimate_double_weak_value(a, b, *c.rho_in, *c.rho_fin);
            CorrelationDecomposition dec =
                dwv_correlation_decomposition(*c.rho_in, *c.rho_fin, a.observable(), b.observable());
            double overlap = (c.rho_in->mat() * c.rho_fin->mat()).trace().real();
            out = {"double_weak_value", w2, overlap, {}};
            out.detail = {
                {"quantity", out.quantity},
                {"value", complex_to_json(w2)},
                {"overlap", overlap},
                {"via_distribution", complex_to_json(via)},
                {"residual", std::abs(via - w2)},
                {"correlation_resum", complex_to_json(dec.resum())},
            };
            break;
        }
        case Variant::kFig1c:
        case Variant::kFig1d: {
            UnbiasedObservable joint =
                v == Variant::kFig1c ? product_observable(*c.observable, *c.observable_b) : *c.joint_observable;
            size_t d = factor_dimension(c.rho_joint->dim());
            ComplexMatrix rs = c.rho_joint->mat() * swap_operator(d);
            double denom = rs.trace().real();
            complex numer = (joint.observable() * rs).trace();
            if (std::abs(denom) <= kUndefinedTolerance) {
                throw ZeroSwapOverlap("Tr[rho SWAP] = 0: the swap functional ratio is undefined");
            }
            complex via = exact_estimate_swap_functional(joint, *c.rho_joint);
            out = {"swap_functional", numer / denom, denom, {}};
            out.detail = {
                {"quantity", out.quantity},
                {"value", complex_to_json(out.value)},
                {"numerator", complex_to_json(numer)},
                {"trace_rho_swap", denom},
                {"via_distribution", complex_to_json(via)},
                {"residual", std::abs(via - out.value)},
            };
            break;
        }
        default:
            throw ConfigError("/variant", "no circuit quantity for this variant");
    }
    return out;
}

void run_exact(const ExperimentConfig &c, RunReport &r) {
    ExactValue e = exact_value(c);
    r.exact = e.detail;
    r.summary["quantity"] = e.quantity;
    put_complex(r.summary, "value", e.value);
    r.summary["normalization"] = e.normalization;
    r.summary["residual"] = e.detail["residual"];
}

void run_estimate(const ExperimentConfig &c, RunReport &r) {
    Variant v = circuit_variant(c);
    if (v != Variant::kFig1a && v != Variant::kFig1b && v != Variant::kFig1c && v != Variant::kFig1d) {
        throw ConfigError("/variant", "estimate needs variant fig1a, fig1b, fig1c, fig1d or exact");
    }
    ExactValue e = exact_value(c);
    EstimateOptions opt{c.mode, c.workers};
    EstimateReport est;
    switch (v) {
        case Variant::kFig1a:
            est = estimate_weak_value(*c.observable, *c.rho_in, *c.rho_fin, c.k, c.delta, c.seed, opt);
            break;
        case Variant::kFig1b:
            est = estimate_double_weak_value(
                *c.observable, *c.observable_b, *c.rho_in, *c.rho_fin, c.k, c.delta, c.seed, opt);
            break;
        case Variant::kFig1c:
            est = estimate_swap_functional(
                product_observable(*c.observable, *c.observable_b), *c.rho_joint, c.k, c.delta, c.seed, opt);
            break;
        default:
            est = estimate_swap_functional(*c.joint_observable, *c.rho_joint, c.k, c.delta, c.seed, opt);
            break;
    }
    r.exact = e.detail;
    r.estimate = to_json(est);

    double err = std::abs(est.estimate - e.value);
    json &s = r.summary;
    s["quantity"] = e.quantity;
    put_complex(s, "estimate", est.estimate);
    put_complex(s, "exact", e.value);
    s["abs_error"] = err;
    s["mu_hat"] = est.mu_hat;
    s["mu_exact"] = e.normalization;
    s["k"] = est.k;
    s["seed"] = est.seed;
    s["mode"] = mode_name(est.mode);
    s["delta"] = est.delta;
    s["x_max"] = est.x_max;
    s["epsilon_nu"] = est.epsilon_nu;
    s["epsilon_mu"] = est.epsilon_mu;
    s["epsilon_total"] = est.epsilon_total ? json(*est.epsilon_total) : json(nullptr);
    s["within_bound"] = est.epsilon_total ? json(err <= *est.epsilon_total) : json(nullptr);
    double overlap = std::abs(e.normalization);
    if (c.plan.epsilon && overlap > 0 && overlap <= 1) {
        SamplePlan plan = plan_samples(*c.plan.epsilon, c.delta, est.x_max, std::abs(e.value), overlap);
        s["planned_k"] = plan.k;
        s["planned_k_leading"] = plan.leading;
    }
}

void run_plan(const ExperimentConfig &c, RunReport &r) {
    if (!c.plan.epsilon) {
        throw ConfigError("/epsilon", "plan needs a target error epsilon");
    }
    double x_max;
    std::string x_source = "config";
    if (c.plan.x_max) {
        x_max = *c.plan.x_max;
    } else if (c.observable) {
        x_max = c.observable->x_max();
        x_source = "observable";
    } else {
        throw ConfigError("/x_max", "plan needs x_max or an observable");
    }
    double overlap;
    std::string overlap_source = "config";
    if (c.plan.overlap) {
        overlap = *c.plan.overlap;
    } else if (c.rho_in && c.rho_fin) {
        overlap = (c.rho_in->mat() * c.rho_fin->mat()).trace().real();
        overlap_source = "states";
        if (overlap <= kUndefinedTolerance) {
            throw OrthogonalPrePostSelection("Tr[rho_in rho_fin] = 0: no number of samples suffices");
        }
    } else {
        throw ConfigError("/overlap", "plan needs an overlap or the states rho_in and rho_fin");
    }
    double w;
    std::string w_source = "config";
    if (c.plan.w_magnitude) {
        w = *c.plan.w_magnitude;
    } else if (c.rho_in && c.rho_fin && c.observable) {
        w = std::abs(weak_value(c.observable->observable(), *c.rho_in, *c.rho_fin).value);
        w_source = "exact";
    } else {
        w = x_max;
        w_source = "default_x_max";
    }
    SamplePlan plan = plan_samples(*c.plan.epsilon, c.delta, x_max, w, overlap);
    r.exact = {
        {"k", plan.k},
        {"exact", plan.exact},
        {"leading", plan.leading},
        {"epsilon", *c.plan.epsilon},
        {"delta", c.delta},
        {"x_max", x_max},
        {"w_magnitude", w},
        {"overlap", overlap},
        {"sources", {{"x_max", x_source}, {"w_magnitude", w_source}, {"overlap", overlap_source}}},
    };
    json &s = r.summary;
    s["k"] = plan.k;
    s["k_exact_form"] = plan.exact;
    s["k_leading"] = plan.leading;
    s["epsilon"] = *c.plan.epsilon;
    s["delta"] = c.delta;
    s["x_max"] = x_max;
    s["w_magnitude"] = w;
    s["overlap"] = overlap;
}

void run_twotime(const ExperimentConfig &c, RunReport &r) {
    if (!c.rho_joint && !(c.rho_in && c.rho_fin)) {
        throw ConfigError("/rho_joint", "twotime needs rho_joint or the pair rho_in, rho_fin");
    }
    bool from_pair = !c.rho_joint;
    DensityMatrix rho = c.rho_joint ? *c.rho_joint : DensityMatrix::product(*c.rho_in, c.rho_fin->transpose());
    size_t d = factor_dimension(rho.dim());
    ComplexMatrix a = operator_or(c.operator_a, c.observable, d);
    ComplexMatrix b = operator_or(c.operator_b, c.observable_b, d);

    double overlap = swap_overlap(rho);
    PptCheck ppt = is_ppt(rho);
    double trace_swap = (rho.mat() * swap_operator(d)).trace().real();
    json &x = r.exact;
    x = {
        {"swap_overlap", overlap},
        {"ppt", ppt.ppt},
        {"pt_min_eigenvalue", ppt.min_eigenvalue},
        {"trace_rho_swap", trace_swap},
        {"omega", nullptr},
        {"pseudo_expectation", nullptr},
        {"state", nullptr},
    };
    json &s = r.summary;
    s["swap_overlap"] = overlap;
    s["ppt"] = ppt.ppt;
    s["pt_min_eigenvalue"] = ppt.min_eigenvalue;
    s["trace_rho_swap"] = trace_swap;
    if (overlap > kUndefinedTolerance) {
        TwoTimeState omega = normalized_from_density(rho);
        complex value = eval_state(omega, a, b);
        x["omega"] = complex_to_json(value);
        x["state"] = to_json(omega);
        put_complex(s, "omega", value);
    }
    if (std::abs(trace_swap) > kUndefinedTolerance) {
        complex pe = pseudo_expectation(rho, a, b);
        x["pseudo_expectation"] = complex_to_json(pe);
        put_complex(s, "pseudo_expectation", pe);
    }
    if (from_pair) {
        double t = (c.rho_in->mat() * c.rho_fin->mat()).trace().real();
        if (t > kUndefinedTolerance && overlap > kUndefinedTolerance) {
            complex w = weak_value(a, *c.rho_in, *c.rho_fin).value;
            complex om = eval_state(normalized_from_density(rho), a, identity(d));
            x["weak_value"] = complex_to_json(w);
            x["omega_a_identity"] = complex_to_json(om);
            x["weak_value_residual"] = std::abs(w - om);
            put_complex(s, "weak_value", w);
            s["weak_value_residual"] = std::abs(w - om);
        }
    }
}

void run_purify(const ExperimentConfig &c, RunReport &r) {
    json &x = r.exact;
    json &s = r.summary;
    if (c.purify_method == PurifyMethod::kAv) {
        if (c.terms.empty()) {
            throw ConfigError("/terms", "the av method needs terms");
        }
        AvExtension ext = av_extension(c.terms);
        size_t d = ext.pair.register_dims[0];
        ComplexMatrix a = operator_or(c.operator_a, c.observable, d);
        ComplexMatrix b = operator_or(c.operator_b, c.observable_b, d);
        complex lambda_a = eval_vector(ext.lambda, a);
        complex extended = ext.extended_functional(embed_leading({a}, ext.pair.register_dims));
        x = {
            {"method", "av"},
            {"register_dims", ext.pair.register_dims},
            {"overlap", ext.pair.overlap},
            {"lambda", complex_to_json(lambda_a)},
            {"extended_lambda", complex_to_json(extended)},
            {"lambda_residual", std::abs(lambda_a - extended)},
            {"ratio", nullptr},
            {"state_ratio", nullptr},
            {"pair_ratio", nullptr},
            {"state_pair", nullptr},
        };
        s["method"] = "av";
        s["overlap"] = ext.pair.overlap;
        put_complex(s, "lambda", lambda_a);
        s["lambda_residual"] = std::abs(lambda_a - extended);
        if (ext.state) {
            complex ratio = ext.normalized_functional(a);
            complex state_ratio = ext.state_value(a, identity(d));
            complex pair = ext.normalized_pair_functional(a, b);
            complex state_pair = ext.state_value(a, b);
            x["ratio"] = complex_to_json(ratio);
            x["state_ratio"] = complex_to_json(state_ratio);
            x["pair_ratio"] = complex_to_json(pair);
            x["state_pair"] = complex_to_json(state_pair);
            put_complex(s, "ratio", ratio);
            s["ratio_residual"] = std::abs(ratio - state_ratio);
            s["pair_residual"] = std::abs(pair - state_pair);
        }
        return;
    }

    if (!c.rho_in || !c.rho_fin) {
        throw ConfigError(c.rho_in ? "/rho_fin" : "/rho_in", "purification needs rho_in and rho_fin");
    }
    const DensityMatrix &rin = *c.rho_in, &rfin = *c.rho_fin;
    size_t d = rin.dim();
    double t = (rin.mat() * rfin.mat()).trace().real();
    ComplexMatrix a = operator_or(c.operator_a, c.observable, d);
    if (c.purify_method == PurifyMethod::kVaidman) {
        PurifiedPair p = vaidman_purification(rin, rfin);
        complex mixed = weak_value(a, rin, rfin).value;
        complex pure = weak_value(embed_leading({a}, p.register_dims), p.psi_in, p.psi_fin);
        double closed = t / (double)d;
        x = {
            {"method", "vaidman"},
            {"register_dims", p.register_dims},
            {"overlap", p.overlap},
            {"overlap_closed_form", closed},
            {"weak_value_mixed", complex_to_json(mixed)},
            {"weak_value_purified", complex_to_json(pure)},
        };
        s["method"] = "vaidman";
        s["overlap"] = p.overlap;
        s["overlap_closed_form"] = closed;
        put_complex(s, "weak_value", mixed);
        s["residual"] = std::abs(mixed - pure);
        return;
    }
    ComplexMatrix b = operator_or(c.operator_b, c.observable_b, d);
    PurifiedPair p = double_purification(rin, rfin);
    complex mixed = double_weak_value(a, b, rin, rfin);
    complex pure = weak_value(embed_leading({a, b}, p.register_dims), p.psi_in, p.psi_fin);
    x = {
        {"method", "double"},
        {"register_dims", p.register_dims},
        {"overlap", p.overlap},
        {"overlap_closed_form", t * t},
        {"double_weak_value_mixed", complex_to_json(mixed)},
        {"double_weak_value_purified", complex_to_json(pure)},
    };
    s["method"] = "double";
    s["overlap"] = p.overlap;
    s["overlap_closed_form"] = t * t;
    put_complex(s, "double_weak_value", mixed);
    s["residual"] = std::abs(mixed - pure);
}

std::string csv_cell(const json &v) {
    if (v.is_null()) {
        return "";
    }
    if (v.is_string()) {
        return v.get<std::string>();
    }
    return v.dump();
}

const std::set<std::string> kImplicitNumericFields = {"/K", "/delta", "/seed", "/epsilon", "/x_max", "/w_magnitude",
                                                      "/overlap", "/workers"};

}  // namespace

std::string_view command_name(Command c) {
    switch (c) {
        case Command::kExact:
            return "exact";
        case Command::kEstimate:
            return "estimate";
        case Command::kPlan:
            return "plan";
        case Command::kTwoTime:
            return "twotime";
        case Command::kPurify:
            return "purify";
    }
    return "unknown";
}

Command default_command(Variant v) {
    switch (v) {
        case Variant::kExact:
            return Command::kExact;
        case Variant::kTwoTime:
            return Command::kTwoTime;
        case Variant::kPurify:
            return Command::kPurify;
        case Variant::kPlan:
            return Command::kPlan;
        default:
            return Command::kEstimate;
    }
}

json RunReport::to_json() const {
    return {
        {"tool", "wvkit"},
        {"version", version},
        {"command", command},
        {"variant", variant},
        {"config", config},
        {"exact", exact},
        {"estimate", estimate},
        {"summary", summary},
        {"timing", elapsed_seconds ? json{{"seconds", *elapsed_seconds}} : json(nullptr)},
    };
}

RunReport RunReport::from_json(const json &j) {
    RunReport r;
    r.version = j.at("version").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.variant = j.at("variant").get<std::string>();
    r.config = j.at("config");
    r.exact = j.at("exact");
    r.estimate = j.at("estimate");
    r.summary = j.at("summary");
    if (!j.at("timing").is_null()) {
        r.elapsed_seconds = j.at("timing").at("seconds").get<double>();
    }
    return r;
}

RunReport run(const ExperimentConfig &config, Command command, const RunOptions &options) {
    auto start = std::chrono::steady_clock::now();
    RunReport r;
    r.command = command_name(command);
    r.variant = variant_name(config.variant);
    r.config = config.raw;
    r.exact = nullptr;
    r.estimate = nullptr;
    r.summary = json::object();

    // exact/estimate act on circuit variants; the other variants carry their own pipeline.
    Command effective = command;
    if ((command == Command::kExact || command == Command::kEstimate) && default_command(config.variant) != Command::kEstimate &&
        config.variant != Variant::kExact) {
        effective = default_command(config.variant);
    }
    switch (effective) {
        case Command::kExact:
            run_exact(config, r);
            break;
        case Command::kEstimate:
            run_estimate(config, r);
            break;
        case Command::kPlan:
            run_plan(config, r);
            break;
        case Command::kTwoTime:
            run_twotime(config, r);
            break;
        case Command::kPurify:
            run_purify(config, r);
            break;
    }
    if (options.timing) {
        r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return r;
}

json SweepResult::to_json() const {
    json rows_json = json::array();
    for (const auto &row : rows) {
        rows_json.push_back(row.to_json());
    }
    return {
        {"tool", "wvkit"},
        {"version", kToolkitVersion},
        {"command", "sweep"},
        {"axis", axis},
        {"values", values},
        {"config", config},
        {"rows", rows_json},
    };
}

std::string SweepResult::to_csv() const {
    std::set<std::string> keys;
    for (const auto &row : rows) {
        for (const auto &[k, v] : row.summary.items()) {
            keys.insert(k);
        }
    }
    std::ostringstream out;
    out << "axis_value";
    for (const auto &k : keys) {
        out << ',' << k;
    }
    out << '\n';
    for (size_t i = 0; i < rows.size(); i++) {
        out << csv_cell(values[i]);
        for (const auto &k : keys) {
            out << ',' << (rows[i].summary.contains(k) ? csv_cell(rows[i].summary[k]) : "");
        }
        out << '\n';
    }
    return out.str();
}

std::string summary_csv(const RunReport &report) {
    std::ostringstream head, row;
    bool first = true;
    for (const auto &[k, v] : report.summary.items()) {
        head << (first ? "" : ",") << k;
        row << (first ? "" : ",") << csv_cell(v);
        first = false;
    }
    return head.str() + "\n" + row.str() + "\n";
}

SweepResult sweep(const json &raw_config, const std::string &axis, const std::vector<json> &values,
                  const RunOptions &options, unsigned parallel_cells) {
    json::json_pointer ptr;
    try {
        ptr = json::json_pointer(axis);
    } catch (const json::exception &e) {
        throw ConfigError("/sweep/axis", "not a JSON pointer: " + axis);
    }
    if (axis.empty()) {
        throw ConfigError("/sweep/axis", "a sweep needs an axis");
    }
    if (raw_config.contains(ptr)) {
        if (!raw_config.at(ptr).is_number()) {
            throw ConfigError(axis, "sweep axis must name a numeric field");
        }
    } else if (!kImplicitNumericFields.count(axis)) {
        throw ConfigError(axis, "sweep axis does not name a field of the config");
    }
    for (size_t i = 0; i < values.size(); i++) {
        if (!values[i].is_number()) {
            throw ConfigError("/sweep/values/" + std::to_string(i), "sweep values must be numbers");
        }
    }

    SweepResult result{axis, values, raw_config, {}};
    result.rows.resize(values.size());
    std::vector<std::exception_ptr> errors(values.size());

    auto cell = [&](size_t i) {
        try {
            json cfg = raw_config;
            cfg.erase("sweep");
            cfg[ptr] = values[i];
            uint64_t base = cfg.contains("seed") && cfg["seed"].is_number_unsigned() ? cfg["seed"].get<uint64_t>() : 0;
            cfg["seed"] = derive_seed(base, i);
            ExperimentConfig c = parse_config(cfg);
            result.rows[i] = run(c, default_command(c.variant), options);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };

    unsigned workers = parallel_cells ? parallel_cells : std::max(1u, std::thread::hardware_concurrency());
    workers = (unsigned)std::min<size_t>(workers, values.size());
    if (workers <= 1) {
        for (size_t i = 0; i < values.size(); i++) {
            cell(i);
        }
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; w++) {
            pool.emplace_back([&] {
                for (size_t i = next++; i < values.size(); i = next++) {
                    cell(i);
                }
            });
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return result;
}

}  // namespace wvkit::cli
