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

#include "wvkit_cli/config.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>

namespace wvkit::cli {

namespace {

std::string child(const std::string &path, const std::string &key) {
    return path + "/" + key;
}

std::string child(const std::string &path, size_t index) {
    return path + "/" + std::to_string(index);
}

// Runs `fn`, rewrapping toolkit errors as ConfigError at `path`.
template <typename F>
auto at_path(const std::string &path, F &&fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const ConfigError &) {
        throw;
    } catch (const InvalidQuantumObject &e) {
        throw ConfigError(path, std::string(predicate_name(e.predicate())) + ": " + e.what());
    } catch (const Error &e) {
        throw ConfigError(path, e.what());
    } catch (const json::exception &e) {
        throw ConfigError(path, e.what());
    }
}

double get_number(const json &j, const std::string &path) {
    if (!j.is_number()) {
        throw ConfigError(path, "expected a number");
    }
    return j.get<double>();
}

uint64_t get_count(const json &j, const std::string &path) {
    if (j.is_number_unsigned()) {
        return j.get<uint64_t>();
    }
    if (j.is_number_integer() && j.get<int64_t>() >= 0) {
        return (uint64_t)j.get<int64_t>();
    }
    if (j.is_number_float()) {
        double v = j.get<double>();
        if (v >= 0 && v == std::floor(v) && v < 1.8e19) {
            return (uint64_t)v;
        }
    }
    throw ConfigError(path, "expected a nonnegative integer");
}

std::string get_string(const json &j, const std::string &path) {
    if (!j.is_string()) {
        throw ConfigError(path, "expected a string");
    }
    return j.get<std::string>();
}

double probability_in(const json &j, const std::string &path, bool open_upper) {
    double v = get_number(j, path);
    if (v < 0 || v > 1 || (open_upper && v == 1)) {
        throw ConfigError(path, open_upper ? "expected a value in [0, 1)" : "expected a value in [0, 1]");
    }
    return v;
}

ComplexVector named_ket(const std::string &name, const std::string &path) {
    if (name == "zero") return kets::zero();
    if (name == "one") return kets::one();
    if (name == "plus") return kets::plus();
    if (name == "minus") return kets::minus();
    if (name == "plus_i") return kets::plus_i();
    if (name == "minus_i") return kets::minus_i();
    throw ConfigError(path, "unknown ket preset '" + name + "'");
}

ComplexVector bell_ket(const std::string &which, const std::string &path) {
    double s = 1 / std::sqrt(2.0);
    ComplexVector v = ComplexVector::Zero(4);
    if (which == "phi+") {
        v(0) = s, v(3) = s;
    } else if (which == "phi-") {
        v(0) = s, v(3) = -s;
    } else if (which == "psi+") {
        v(1) = s, v(2) = s;
    } else if (which == "psi-") {
        v(1) = s, v(2) = -s;
    } else {
        throw ConfigError(path, "unknown Bell state '" + which + "' (expected phi+, phi-, psi+ or psi-)");
    }
    return v;
}

const std::set<std::string> kTopLevelKeys = {
    "variant", "rho_in", "rho_fin", "rho_joint", "observable", "observable_b", "joint_observable", "A", "B",
    "terms", "method", "K", "delta", "seed", "mode", "workers", "epsilon", "x_max", "w_magnitude", "overlap",
    "sweep", "description"};

Variant parse_variant(const std::string &name, const std::string &path) {
    for (Variant v : {Variant::kFig1a, Variant::kFig1b, Variant::kFig1c, Variant::kFig1d, Variant::kExact,
                      Variant::kTwoTime, Variant::kPurify, Variant::kPlan}) {
        if (variant_name(v) == name) {
            return v;
        }
    }
    throw ConfigError(
        path, "unknown variant '" + name + "' (expected fig1a, fig1b, fig1c, fig1d, exact, twotime, purify or plan)");
}

void require_dim(size_t expected, size_t actual, const std::string &path, const std::string &what) {
    if (expected != actual) {
        throw ConfigError(
            path, "dimension " + std::to_string(actual) + " does not match " + what + " (" + std::to_string(expected) +
                      ")");
    }
}

}  // namespace

std::string_view variant_name(Variant v) {
    switch (v) {
        case Variant::kFig1a:
            return "fig1a";
        case Variant::kFig1b:
            return "fig1b";
        case Variant::kFig1c:
            return "fig1c";
        case Variant::kFig1d:
            return "fig1d";
        case Variant::kExact:
            return "exact";
        case Variant::kTwoTime:
            return "twotime";
        case Variant::kPurify:
            return "purify";
        case Variant::kPlan:
            return "plan";
    }
    return "unknown";
}

ValidationTolerance tolerance_from_env() {
    ValidationTolerance tol;
    if (const char *env = std::getenv("WVKIT_TOLERANCE")) {
        char *end = nullptr;
        double v = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(v > 0)) {
            throw ConfigError("$WVKIT_TOLERANCE", "expected a positive number, got '" + std::string(env) + "'");
        }
        tol.hermitian = tol.trace = tol.positivity = tol.completeness = v;
    }
    return tol;
}

json load_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("", "cannot open config file '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw ConfigError("", std::string("config is not valid JSON: ") + e.what());
    }
}

ComplexMatrix parse_operator(const json &spec, const std::string &path) {
    return at_path(path, [&]() -> ComplexMatrix {
        if (spec.is_string()) {
            return pauli::from_string(spec.get<std::string>());
        }
        if (spec.is_array()) {
            return matrix_from_json(spec);
        }
        if (spec.is_object()) {
            if (spec.contains("pauli")) {
                return pauli::from_string(get_string(spec["pauli"], child(path, "pauli")));
            }
            if (spec.contains("matrix")) {
                return at_path(child(path, "matrix"), [&] { return matrix_from_json(spec["matrix"]); });
            }
            if (spec.contains("identity")) {
                return identity(get_count(spec["identity"], child(path, "identity")));
            }
        }
        throw ConfigError(path, "expected a Pauli string, a matrix, or an object with pauli/matrix/identity");
    });
}

DensityMatrix parse_state(const json &spec, const std::string &path, const ValidationTolerance &tol) {
    return at_path(path, [&]() -> DensityMatrix {
        if (spec.is_string()) {
            std::string name = spec.get<std::string>();
            if (name == "maximally_mixed") {
                return DensityMatrix::maximally_mixed(2);
            }
            if (name == "bell") {
                return DensityMatrix::pure(bell_ket("phi+", path), {2, 2});
            }
            return DensityMatrix::pure(named_ket(name, path));
        }
        if (!spec.is_object()) {
            throw ConfigError(path, "expected a state preset name or an object");
        }
        if (spec.contains("ket")) {
            ComplexVector v = at_path(child(path, "ket"), [&] { return vector_from_json(spec["ket"]); });
            if (v.norm() == 0) {
                throw ConfigError(child(path, "ket"), "ket must be nonzero");
            }
            return DensityMatrix::pure(v);
        }
        if (spec.contains("basis")) {
            size_t d = spec.contains("dim") ? get_count(spec["dim"], child(path, "dim")) : 2;
            size_t i = get_count(spec["basis"], child(path, "basis"));
            if (i >= d) {
                throw ConfigError(child(path, "basis"), "basis index out of range");
            }
            return DensityMatrix::pure(kets::basis(d, i));
        }
        if (spec.contains("matrix")) {
            ComplexMatrix m = at_path(child(path, "matrix"), [&] { return matrix_from_json(spec["matrix"]); });
            return DensityMatrix::make(m, {}, tol);
        }
        if (spec.contains("product")) {
            const json &parts = spec["product"];
            if (!parts.is_array() || parts.size() != 2) {
                throw ConfigError(child(path, "product"), "expected a list of two states");
            }
            return DensityMatrix::product(
                parse_state(parts[0], child(child(path, "product"), 0), tol),
                parse_state(parts[1], child(child(path, "product"), 1), tol));
        }
        if (spec.contains("transpose")) {
            return parse_state(spec["transpose"], child(path, "transpose"), tol).transpose();
        }
        if (spec.contains("preset")) {
            std::string name = get_string(spec["preset"], child(path, "preset"));
            if (name == "maximally_mixed") {
                size_t d = spec.contains("dim") ? get_count(spec["dim"], child(path, "dim")) : 2;
                if (d == 0) {
                    throw ConfigError(child(path, "dim"), "dimension must be positive");
                }
                return DensityMatrix::maximally_mixed(d);
            }
            if (name == "bell") {
                std::string which = spec.contains("which") ? get_string(spec["which"], child(path, "which")) : "phi+";
                return DensityMatrix::pure(bell_ket(which, child(path, "which")), {2, 2});
            }
            if (name == "werner") {
                if (!spec.contains("p")) {
                    throw ConfigError(child(path, "p"), "Werner state needs a mixing parameter p");
                }
                double p = probability_in(spec["p"], child(path, "p"), false);
                ComplexMatrix singlet = projector(bell_ket("psi-", path));
                return DensityMatrix::make(p * singlet + (1 - p) * identity(4) / 4.0, {2, 2}, tol);
            }
            return DensityMatrix::pure(named_ket(name, child(path, "preset")));
        }
        throw ConfigError(path, "expected one of ket, basis, matrix, product, transpose or preset");
    });
}

UnbiasedObservable parse_observable(const json &spec, const std::string &path, const ValidationTolerance &tol) {
    return at_path(path, [&]() -> UnbiasedObservable {
        if (spec.is_object() && spec.contains("noisy")) {
            ComplexMatrix a = parse_operator(spec["noisy"], child(path, "noisy"));
            double p = spec.contains("p") ? probability_in(spec["p"], child(path, "p"), true) : 0.0;
            if (spec.contains("lambda")) {
                std::vector<double> lambda;
                const json &l = spec["lambda"];
                if (!l.is_array()) {
                    throw ConfigError(child(path, "lambda"), "expected a list of weights");
                }
                for (size_t i = 0; i < l.size(); i++) {
                    lambda.push_back(get_number(l[i], child(child(path, "lambda"), i)));
                }
                return at_path(child(path, "lambda"), [&] { return noisy_measurement(a, p, lambda); });
            }
            return noisy_measurement(a, p);
        }
        if (spec.is_object() && spec.contains("povm")) {
            const json &elements = spec["povm"];
            if (!elements.is_array() || elements.empty()) {
                throw ConfigError(child(path, "povm"), "expected a non-empty list of matrices");
            }
            std::vector<ComplexMatrix> povm;
            for (size_t i = 0; i < elements.size(); i++) {
                povm.push_back(parse_operator(elements[i], child(child(path, "povm"), i)));
            }
            if (!spec.contains("values") || !spec["values"].is_array()) {
                throw ConfigError(child(path, "values"), "a POVM observable needs one value per element");
            }
            std::vector<double> values;
            for (size_t i = 0; i < spec["values"].size(); i++) {
                values.push_back(get_number(spec["values"][i], child(child(path, "values"), i)));
            }
            if (values.size() != povm.size()) {
                throw ConfigError(child(path, "values"), "a POVM observable needs one value per element");
            }
            Povm p = at_path(child(path, "povm"), [&] { return Povm::make(std::move(povm), tol); });
            return UnbiasedObservable::fit(std::move(p), std::move(values));
        }
        ComplexMatrix a = parse_operator(spec, path);
        if (!is_hermitian(a, tol.hermitian)) {
            throw ConfigError(path, "observable must be Hermitian");
        }
        return projective_measurement(a);
    });
}

ExperimentConfig parse_config(const json &raw, const ValidationTolerance &tol) {
    if (!raw.is_object()) {
        throw ConfigError("", "config must be a JSON object");
    }
    for (const auto &[key, value] : raw.items()) {
        if (!kTopLevelKeys.count(key)) {
            throw ConfigError("/" + key, "unknown field");
        }
    }

    ExperimentConfig c;
    c.raw = raw;
    if (raw.contains("variant")) {
        c.variant = parse_variant(get_string(raw["variant"], "/variant"), "/variant");
    }
    auto state = [&](const char *key, std::optional<DensityMatrix> &out) {
        if (raw.contains(key)) {
            out = parse_state(raw[key], std::string("/") + key, tol);
        }
    };
    auto observable = [&](const char *key, std::optional<UnbiasedObservable> &out) {
        if (raw.contains(key)) {
            out = parse_observable(raw[key], std::string("/") + key, tol);
        }
    };
    state("rho_in", c.rho_in);
    state("rho_fin", c.rho_fin);
    state("rho_joint", c.rho_joint);
    observable("observable", c.observable);
    observable("observable_b", c.observable_b);
    observable("joint_observable", c.joint_observable);
    if (raw.contains("A")) {
        c.operator_a = parse_operator(raw["A"], "/A");
    }
    if (raw.contains("B")) {
        c.operator_b = parse_operator(raw["B"], "/B");
    }
    if (raw.contains("terms")) {
        const json &t = raw["terms"];
        if (!t.is_array() || t.empty()) {
            throw ConfigError("/terms", "expected a non-empty list of {in, fin} ket pairs");
        }
        for (size_t i = 0; i < t.size(); i++) {
            std::string p = child("/terms", i);
            if (!t[i].is_object() || !t[i].contains("in") || !t[i].contains("fin")) {
                throw ConfigError(p, "expected an object with 'in' and 'fin' kets");
            }
            ComplexVector in = at_path(child(p, "in"), [&] { return vector_from_json(t[i]["in"]); });
            ComplexVector fin = at_path(child(p, "fin"), [&] { return vector_from_json(t[i]["fin"]); });
            if (in.size() != fin.size()) {
                throw ConfigError(p, "'in' and 'fin' kets differ in dimension");
            }
            if (!c.terms.empty() && (size_t)in.size() != (size_t)c.terms.front().first.size()) {
                throw ConfigError(p, "all terms must have the same dimension");
            }
            c.terms.emplace_back(in, fin);
        }
    }
    if (raw.contains("method")) {
        std::string m = get_string(raw["method"], "/method");
        if (m == "vaidman") {
            c.purify_method = PurifyMethod::kVaidman;
        } else if (m == "double") {
            c.purify_method = PurifyMethod::kDouble;
        } else if (m == "av") {
            c.purify_method = PurifyMethod::kAv;
        } else {
            throw ConfigError("/method", "unknown purification method '" + m + "' (expected vaidman, double or av)");
        }
    }

    if (raw.contains("K")) {
        c.k = get_count(raw["K"], "/K");
    }
    if (raw.contains("delta")) {
        c.delta = get_number(raw["delta"], "/delta");
        if (!(c.delta > 0 && c.delta < 1)) {
            throw ConfigError("/delta", "expected a value in (0, 1)");
        }
    }
    if (raw.contains("seed")) {
        c.seed = get_count(raw["seed"], "/seed");
    }
    if (raw.contains("mode")) {
        c.mode = at_path("/mode", [&] { return parse_mode(get_string(raw["mode"], "/mode")); });
    }
    if (raw.contains("workers")) {
        c.workers = (unsigned)get_count(raw["workers"], "/workers");
    }
    auto positive = [&](const char *key, std::optional<double> &out, bool allow_zero) {
        if (raw.contains(key)) {
            double v = get_number(raw[key], std::string("/") + key);
            if (allow_zero ? v < 0 : v <= 0) {
                throw ConfigError(std::string("/") + key, allow_zero ? "must be nonnegative" : "must be positive");
            }
            out = v;
        }
    };
    positive("epsilon", c.plan.epsilon, false);
    positive("x_max", c.plan.x_max, false);
    positive("w_magnitude", c.plan.w_magnitude, true);
    positive("overlap", c.plan.overlap, false);
    if (c.plan.overlap && *c.plan.overlap > 1) {
        throw ConfigError("/overlap", "must not exceed 1");
    }

    if (raw.contains("sweep")) {
        const json &s = raw["sweep"];
        if (!s.is_object()) {
            throw ConfigError("/sweep", "expected an object with 'axis' and 'values'");
        }
        SweepSpec sweep;
        sweep.axis = s.contains("axis") ? get_string(s["axis"], "/sweep/axis") : "";
        if (s.contains("values")) {
            if (!s["values"].is_array()) {
                throw ConfigError("/sweep/values", "expected a list");
            }
            for (const auto &v : s["values"]) {
                sweep.values.push_back(v);
            }
        }
        c.sweep = std::move(sweep);
    }

    // Dimension agreement.
    bool estimating = c.variant == Variant::kFig1a || c.variant == Variant::kFig1b || c.variant == Variant::kExact;
    if (c.rho_in && c.rho_fin) {
        require_dim(c.rho_in->dim(), c.rho_fin->dim(), "/rho_fin", "rho_in");
    }
    size_t d_system = c.rho_in ? c.rho_in->dim() : 0;
    if (c.rho_joint) {
        size_t n = c.rho_joint->dim();
        size_t root = (size_t)std::llround(std::sqrt((double)n));
        if (root * root != n) {
            throw ConfigError("/rho_joint", "joint state must act on H (x) H (dimension must be a square)");
        }
        if (!d_system) {
            d_system = root;
        }
    }
    if (d_system) {
        if (c.observable) require_dim(d_system, c.observable->dim(), "/observable", "the system dimension");
        if (c.observable_b) require_dim(d_system, c.observable_b->dim(), "/observable_b", "the system dimension");
        if (c.operator_a) require_dim(d_system, (size_t)c.operator_a->rows(), "/A", "the system dimension");
        if (c.operator_b) require_dim(d_system, (size_t)c.operator_b->rows(), "/B", "the system dimension");
    }
    if (c.rho_joint && c.joint_observable) {
        require_dim(c.rho_joint->dim(), c.joint_observable->dim(), "/joint_observable", "rho_joint");
    }

    auto need = [&](bool present, const char *key) {
        if (!present) {
            throw ConfigError(
                std::string("/") + key, "required for variant " + std::string(variant_name(c.variant)));
        }
    };
    switch (c.variant) {
        case Variant::kFig1a:
        case Variant::kExact:
            need(c.rho_in.has_value(), "rho_in");
            need(c.rho_fin.has_value(), "rho_fin");
            need(c.observable.has_value(), "observable");
            break;
        case Variant::kFig1b:
            need(c.rho_in.has_value(), "rho_in");
            need(c.rho_fin.has_value(), "rho_fin");
            need(c.observable.has_value(), "observable");
            need(c.observable_b.has_value(), "observable_b");
            break;
        case Variant::kFig1c:
            need(c.rho_joint.has_value(), "rho_joint");
            need(c.observable.has_value(), "observable");
            need(c.observable_b.has_value(), "observable_b");
            break;
        case Variant::kFig1d:
            need(c.rho_joint.has_value(), "rho_joint");
            need(c.joint_observable.has_value(), "joint_observable");
            break;
        case Variant::kTwoTime:
            need(c.rho_joint.has_value() || (c.rho_in && c.rho_fin), "rho_joint");
            break;
        case Variant::kPurify:
            if (c.purify_method == PurifyMethod::kAv) {
                need(!c.terms.empty(), "terms");
                size_t d = c.terms.front().first.size();
                if (c.operator_a) require_dim(d, (size_t)c.operator_a->rows(), "/A", "the term dimension");
                if (c.operator_b) require_dim(d, (size_t)c.operator_b->rows(), "/B", "the term dimension");
            } else {
                need(c.rho_in.has_value(), "rho_in");
                need(c.rho_fin.has_value(), "rho_fin");
            }
            break;
        case Variant::kPlan:
            break;
    }
    if (estimating && c.k < 2 && c.variant != Variant::kExact) {
        throw ConfigError("/K", "estimation needs K >= 2");
    }
    if ((c.variant == Variant::kFig1b || c.variant == Variant::kFig1c || c.variant == Variant::kFig1d) && c.k < 2) {
        throw ConfigError("/K", "estimation needs K >= 2");
    }
    return c;
}

}  // namespace wvkit::cli
