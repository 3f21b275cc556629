#include "dsmc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "dsmc/errors.hpp"
#include "dsmc/smc.hpp"
#include "dsmc/trace.hpp"

namespace dsmc {

double ReferenceProfile::at(double t) const {
    if (knots.empty()) return 0.0;
    if (t <= knots.front().first) return knots.front().second;
    if (t >= knots.back().first) return knots.back().second;
    // First knot strictly past t; a repeated knot time selects the later value.
    auto it = std::upper_bound(knots.begin(), knots.end(), t,
                               [](double v, const auto& k) { return v < k.first; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    if (hi.first == lo.first) return hi.second;
    const double w = (t - lo.first) / (hi.first - lo.first);
    return lo.second + w * (hi.second - lo.second);
}

void ReferenceProfile::validate() const {
    if (knots.empty()) {
        throw config_error("reference: at least one knot is required");
    }
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (!std::isfinite(knots[i].first) || !std::isfinite(knots[i].second)) {
            throw config_error("reference: non-finite knot");
        }
        if (i > 0 && knots[i].first < knots[i - 1].first) {
            throw config_error("reference: knot times must be sorted");
        }
    }
}

ReferenceProfile ReferenceProfile::standard() {
    return ReferenceProfile{{{0.0, 40.0},
                             {20.0, 40.0},
                             {30.0, 80.0},
                             {55.0, 80.0},
                             {55.0, 55.0},
                             {80.0, 55.0},
                             {90.0, 70.0},
                             {100.0, 70.0}}};
}

AdaptationSpec AdaptationSpec::standard(const DcMotorParams& p, double base_gain) {
    AdaptationSpec spec;
    const Eigen::Matrix2d a = dc_motor_model(p).A;
    spec.mask_alpha << true, true, true, true;
    // The speed equation's current coupling is the loop's known input
    // gain, so its multiplicative term stays pinned.
    spec.mask_beta << true, false, true, true;
    spec.beta_hat0.setOnes();
    spec.alpha_hat0.setZero();
    // Typical signal magnitudes on the standard profile; the gains grow
    // with the squared regressor so that the per-step estimate moves stay
    // well inside the stable range for every entry.
    const double scale[2] = {60.0, 80.0};
    // Multiplicative and additive updates of one entry move along a fixed
    // direction set by the gain ratio; scaling the multiplicative gain
    // with a_pq^2 points that direction at 50%-of-entry perturbations
    // instead of away from them.
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            spec.rho_alpha(i, j) = base_gain * scale[j] * scale[j];
            spec.rho_beta(i, j) = base_gain * a(i, j) * a(i, j) * scale[j] * scale[j];
        }
    }
    return spec;
}

std::vector<std::string> Scenario::validate() const {
    std::vector<std::string> warnings;
    try {
        (void)dc_motor_model(motor);
    } catch (const std::invalid_argument& e) {
        throw config_error(e.what());
    }
    if (!(duration > 0.0)) throw config_error("run: duration must be positive");
    if (!(period > 0.0)) throw config_error("run: sample_time must be positive");
    if (!(fine_dt > 0.0)) throw config_error("run: fine_dt must be positive");
    if (fine_dt > period) throw config_error("run: fine_dt must not exceed sample_time");
    if (metrics_skip < 0.0 || metrics_skip >= duration) {
        throw config_error("run: transient_skip must be inside the run length");
    }
    if (!(divergence_bound > 0.0)) throw config_error("plant: divergence_bound must be positive");

    try {
        reference.validate();
        disturbance.validate();
        true_uncertainty.validate();
    } catch (const std::exception& e) {
        throw config_error(e.what());
    }

    if (controller.order != 1 && controller.order != 2) {
        throw config_error("controller: order must be 1 or 2");
    }
    if (controller.adaptive && controller.exact_model) {
        throw config_error("controller: adaptive and exact model are mutually exclusive");
    }
    if (!controller.mimo &&
        (controller.gain(0, 1) != 0.0 || controller.gain(1, 0) != 0.0)) {
        throw config_error("controller: siso structure requires zero off-diagonal gains");
    }
    const auto check = controller.order == 1
                           ? validate_first_order_gains(controller.gain)
                           : validate_second_order_gains(controller.gain);
    if (!check.ok) {
        throw config_error("controller: " + check.detail);
    }
    if (!(controller.boundary_layer_speed > 0.0) ||
        !(controller.boundary_layer_current > 0.0)) {
        throw config_error("controller: boundary layers must be positive");
    }

    if (adc.enabled) {
        if (adc.bits < 1) throw config_error("adc: bits must be >= 1");
        if (!(adc.fsr_speed > 0.0) || !(adc.fsr_current > 0.0)) {
            throw config_error("adc: full-scale ranges must be positive");
        }
    }

    if (controller.adaptive) {
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                if (adaptation.mask_beta(i, j) && !(adaptation.rho_beta(i, j) > 0.0)) {
                    throw config_error("adaptation: rho_beta must be positive on masked entries");
                }
                if (adaptation.mask_alpha(i, j) && !(adaptation.rho_alpha(i, j) > 0.0)) {
                    throw config_error("adaptation: rho_alpha must be positive on masked entries");
                }
            }
        }
    }
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            if (!adaptation.mask_beta(i, j) && adaptation.beta_hat0(i, j) != 1.0) {
                throw config_error("adaptation: beta0 outside the mask must stay at 1");
            }
            if (!adaptation.mask_alpha(i, j) && adaptation.alpha_hat0(i, j) != 0.0) {
                throw config_error("adaptation: alpha0 outside the mask must stay at 0");
            }
        }
    }

    // Sampling-theorem guard: warn when the controller period exceeds half
    // of the shortest reference segment, but still run.
    double shortest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < reference.knots.size(); ++i) {
        const double span = reference.knots[i].first - reference.knots[i - 1].first;
        if (span > 0.0) shortest = std::min(shortest, span);
    }
    if (std::isfinite(shortest) && period > 0.5 * shortest) {
        std::ostringstream os;
        os << "sample_time " << period << " s exceeds half the shortest reference feature ("
           << shortest << " s); the sampling-theorem criterion is violated";
        warnings.push_back(os.str());
    }
    return warnings;
}

namespace {

using SectionMap = std::map<std::string, std::map<std::string, std::string>>;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

SectionMap read_sections(const std::string& text) {
    SectionMap sections;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw config_error("line " + std::to_string(lineno) + ": malformed section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) {
                throw config_error("line " + std::to_string(lineno) + ": empty section name");
            }
            sections[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw config_error("line " + std::to_string(lineno) + ": expected key = value");
        }
        if (section.empty()) {
            throw config_error("line " + std::to_string(lineno) + ": key outside any section");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw config_error("line " + std::to_string(lineno) + ": empty key");
        }
        auto [it, inserted] = sections[section].emplace(key, value);
        if (!inserted) {
            throw config_error("duplicate key '" + key + "' in section [" + section + "]");
        }
    }
    return sections;
}

double to_double(const std::string& value, const std::string& context) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw config_error(context + ": cannot parse number '" + value + "'");
    }
}

int to_int(const std::string& value, const std::string& context) {
    const double v = to_double(value, context);
    if (v != std::floor(v)) {
        throw config_error(context + ": expected an integer, got '" + value + "'");
    }
    return static_cast<int>(v);
}

bool to_bool(const std::string& value, const std::string& context) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw config_error(context + ": expected true/false, got '" + value + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::istringstream in(s);
    std::string part;
    while (std::getline(in, part, sep)) parts.push_back(trim(part));
    return parts;
}

std::vector<std::pair<double, double>> to_pairs(const std::string& value,
                                                const std::string& context) {
    std::vector<std::pair<double, double>> out;
    if (trim(value).empty() || trim(value) == "none") return out;
    for (const auto& item : split(value, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() != 2) {
            throw config_error(context + ": expected time:value pairs, got '" + item + "'");
        }
        out.emplace_back(to_double(parts[0], context), to_double(parts[1], context));
    }
    return out;
}

struct EntryKey {
    int i, j;
    bool beta;
};

EntryKey parse_entry_token(const std::string& token, const std::string& context) {
    std::string name = token;
    bool beta = false;
    if (name.rfind("beta", 0) == 0) {
        beta = true;
        name = name.substr(4);
    } else if (name.rfind("alpha", 0) == 0) {
        name = name.substr(5);
    } else {
        throw config_error(context + ": unknown parameter '" + token + "'");
    }
    if (name.size() != 2 || name[0] < '1' || name[0] > '2' || name[1] < '1' || name[1] > '2') {
        throw config_error(context + ": unknown parameter '" + token + "'");
    }
    return {name[0] - '1', name[1] - '1', beta};
}

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s = {
        {"plant",
         {"inertia", "resistance", "inductance", "torque_const", "damping", "back_emf",
          "load_torque", "speed0", "current0", "divergence_bound"}},
        {"uncertainty",
         {"beta11", "beta12", "beta21", "beta22", "alpha11", "alpha12", "alpha21",
          "alpha22"}},
        {"adc",
         {"enabled", "bits", "fsr_speed", "fsr_current", "offset_speed",
          "offset_current"}},
        {"controller",
         {"order", "structure", "adaptive", "use_mu", "model", "epsilon_speed",
          "epsilon_current", "g11", "g12", "g21", "g22"}},
        {"adaptation",
         {"mask", "rho_beta", "rho_alpha", "rho_beta_11", "rho_beta_12", "rho_beta_21",
          "rho_beta_22", "rho_alpha_11", "rho_alpha_12", "rho_alpha_21", "rho_alpha_22",
          "beta0_11", "beta0_12", "beta0_21", "beta0_22", "alpha0_11", "alpha0_12",
          "alpha0_21", "alpha0_22"}},
        {"reference", {"knots"}},
        {"disturbance", {"steps"}},
        {"run", {"duration", "sample_time", "fine_dt", "seed", "transient_skip"}},
    };
    return s;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    const SectionMap sections = read_sections(text);
    for (const auto& [section, keys] : sections) {
        const auto it = schema().find(section);
        if (it == schema().end()) {
            throw config_error("unknown section [" + section + "]");
        }
        for (const auto& [key, value] : keys) {
            if (!it->second.count(key)) {
                throw config_error("unknown key '" + key + "' in section [" + section + "]");
            }
        }
    }

    Scenario s;
    auto get = [&](const std::string& section, const std::string& key) -> const std::string* {
        const auto sit = sections.find(section);
        if (sit == sections.end()) return nullptr;
        const auto kit = sit->second.find(key);
        return kit == sit->second.end() ? nullptr : &kit->second;
    };
    auto num = [&](const std::string& section, const std::string& key, double& target) {
        if (const auto* v = get(section, key)) target = to_double(*v, section + "." + key);
    };

    num("plant", "inertia", s.motor.inertia);
    num("plant", "resistance", s.motor.resistance);
    num("plant", "inductance", s.motor.inductance);
    num("plant", "torque_const", s.motor.torque_const);
    num("plant", "damping", s.motor.damping);
    num("plant", "back_emf", s.motor.back_emf);
    num("plant", "load_torque", s.motor.load_torque);
    num("plant", "speed0", s.speed0);
    num("plant", "current0", s.current0);
    num("plant", "divergence_bound", s.divergence_bound);

    if (const auto* v = get("adc", "enabled")) s.adc.enabled = to_bool(*v, "adc.enabled");
    if (const auto* v = get("adc", "bits")) s.adc.bits = to_int(*v, "adc.bits");
    num("adc", "fsr_speed", s.adc.fsr_speed);
    num("adc", "fsr_current", s.adc.fsr_current);
    num("adc", "offset_speed", s.adc.offset_speed);
    num("adc", "offset_current", s.adc.offset_current);

    if (const auto* v = get("controller", "order")) {
        s.controller.order = to_int(*v, "controller.order");
    }
    if (const auto* v = get("controller", "structure")) {
        if (*v == "siso") s.controller.mimo = false;
        else if (*v == "mimo") s.controller.mimo = true;
        else throw config_error("controller.structure: expected siso or mimo");
    }
    if (const auto* v = get("controller", "adaptive")) {
        s.controller.adaptive = to_bool(*v, "controller.adaptive");
    }
    if (const auto* v = get("controller", "use_mu")) {
        s.controller.use_uncertainty_term = to_bool(*v, "controller.use_mu");
    }
    if (const auto* v = get("controller", "model")) {
        if (*v == "nominal") s.controller.exact_model = false;
        else if (*v == "exact") s.controller.exact_model = true;
        else throw config_error("controller.model: expected nominal or exact");
    }
    num("controller", "epsilon_speed", s.controller.boundary_layer_speed);
    num("controller", "epsilon_current", s.controller.boundary_layer_current);
    const bool offdiag_given = get("controller", "g12") || get("controller", "g21");
    if (s.controller.mimo && !offdiag_given) {
        s.controller.gain(0, 1) = s.controller.gain(1, 0) = 0.05;
    }
    num("controller", "g11", s.controller.gain(0, 0));
    num("controller", "g12", s.controller.gain(0, 1));
    num("controller", "g21", s.controller.gain(1, 0));
    num("controller", "g22", s.controller.gain(1, 1));

    s.adaptation = AdaptationSpec::standard(s.motor);
    if (const auto* v = get("adaptation", "mask")) {
        s.adaptation.mask_beta.setConstant(false);
        s.adaptation.mask_alpha.setConstant(false);
        if (trim(*v) != "none") {
            for (const auto& token : split(*v, ',')) {
                const EntryKey e = parse_entry_token(token, "adaptation.mask");
                if (e.beta) s.adaptation.mask_beta(e.i, e.j) = true;
                else s.adaptation.mask_alpha(e.i, e.j) = true;
            }
        }
    }
    if (const auto* v = get("adaptation", "rho_beta")) {
        s.adaptation.rho_beta.setConstant(to_double(*v, "adaptation.rho_beta"));
    }
    if (const auto* v = get("adaptation", "rho_alpha")) {
        s.adaptation.rho_alpha.setConstant(to_double(*v, "adaptation.rho_alpha"));
    }
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const std::string suffix = "_" + std::to_string(i + 1) + std::to_string(j + 1);
            if (const auto* v = get("adaptation", "rho_beta" + suffix)) {
                s.adaptation.rho_beta(i, j) = to_double(*v, "adaptation.rho_beta" + suffix);
            }
            if (const auto* v = get("adaptation", "rho_alpha" + suffix)) {
                s.adaptation.rho_alpha(i, j) = to_double(*v, "adaptation.rho_alpha" + suffix);
            }
            const std::string entry = std::to_string(i + 1) + std::to_string(j + 1);
            if (const auto* v = get("adaptation", "beta0_" + entry)) {
                s.adaptation.beta_hat0(i, j) = to_double(*v, "adaptation.beta0_" + entry);
            }
            if (const auto* v = get("adaptation", "alpha0_" + entry)) {
                s.adaptation.alpha_hat0(i, j) = to_double(*v, "adaptation.alpha0_" + entry);
            }
        }
    }

    s.true_uncertainty = UncertaintySpec::identity(2);
    s.true_uncertainty.mask_beta = s.adaptation.mask_beta.cast<bool>();
    s.true_uncertainty.mask_alpha = s.adaptation.mask_alpha.cast<bool>();
    if (const auto sit = sections.find("uncertainty"); sit != sections.end()) {
        for (const auto& [key, value] : sit->second) {
            const EntryKey e = parse_entry_token(key, "uncertainty");
            const double v = to_double(value, "uncertainty." + key);
            if (e.beta) s.true_uncertainty.beta(e.i, e.j) = v;
            else s.true_uncertainty.alpha(e.i, e.j) = v;
        }
    }

    if (const auto* v = get("reference", "knots")) {
        s.reference.knots = to_pairs(*v, "reference.knots");
    }
    if (const auto* v = get("disturbance", "steps")) {
        s.disturbance.steps = to_pairs(*v, "disturbance.steps");
    }

    num("run", "duration", s.duration);
    num("run", "sample_time", s.period);
    num("run", "fine_dt", s.fine_dt);
    if (const auto* v = get("run", "seed")) {
        s.seed = static_cast<unsigned>(to_int(*v, "run.seed"));
    }
    num("run", "transient_skip", s.metrics_skip);
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw config_error("cannot open scenario file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string scenario_to_config(const Scenario& s) {
    std::ostringstream os;
    const auto d = [](double v) { return format_double(v); };
    os << "[plant]\n";
    os << "inertia = " << d(s.motor.inertia) << "\n";
    os << "resistance = " << d(s.motor.resistance) << "\n";
    os << "inductance = " << d(s.motor.inductance) << "\n";
    os << "torque_const = " << d(s.motor.torque_const) << "\n";
    os << "damping = " << d(s.motor.damping) << "\n";
    os << "back_emf = " << d(s.motor.back_emf) << "\n";
    os << "load_torque = " << d(s.motor.load_torque) << "\n";
    os << "speed0 = " << d(s.speed0) << "\n";
    os << "current0 = " << d(s.current0) << "\n";
    os << "divergence_bound = " << d(s.divergence_bound) << "\n\n";

    os << "[uncertainty]\n";
    static const char* names[2][2] = {{"11", "12"}, {"21", "22"}};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            if (s.true_uncertainty.mask_beta(i, j) && s.true_uncertainty.beta(i, j) != 1.0) {
                os << "beta" << names[i][j] << " = " << d(s.true_uncertainty.beta(i, j)) << "\n";
            }
            if (s.true_uncertainty.mask_alpha(i, j) && s.true_uncertainty.alpha(i, j) != 0.0) {
                os << "alpha" << names[i][j] << " = " << d(s.true_uncertainty.alpha(i, j)) << "\n";
            }
        }
    }
    os << "\n[adc]\n";
    os << "enabled = " << (s.adc.enabled ? "true" : "false") << "\n";
    os << "bits = " << s.adc.bits << "\n";
    os << "fsr_speed = " << d(s.adc.fsr_speed) << "\n";
    os << "fsr_current = " << d(s.adc.fsr_current) << "\n";
    os << "offset_speed = " << d(s.adc.offset_speed) << "\n";
    os << "offset_current = " << d(s.adc.offset_current) << "\n\n";

    os << "[controller]\n";
    os << "order = " << s.controller.order << "\n";
    os << "structure = " << (s.controller.mimo ? "mimo" : "siso") << "\n";
    os << "adaptive = " << (s.controller.adaptive ? "true" : "false") << "\n";
    os << "use_mu = " << (s.controller.use_uncertainty_term ? "true" : "false") << "\n";
    os << "model = " << (s.controller.exact_model ? "exact" : "nominal") << "\n";
    os << "epsilon_speed = " << d(s.controller.boundary_layer_speed) << "\n";
    os << "epsilon_current = " << d(s.controller.boundary_layer_current) << "\n";
    os << "g11 = " << d(s.controller.gain(0, 0)) << "\n";
    os << "g12 = " << d(s.controller.gain(0, 1)) << "\n";
    os << "g21 = " << d(s.controller.gain(1, 0)) << "\n";
    os << "g22 = " << d(s.controller.gain(1, 1)) << "\n\n";

    os << "[adaptation]\n";
    os << "mask = ";
    bool first = true;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            if (s.adaptation.mask_beta(i, j)) {
                os << (first ? "" : ", ") << "beta" << names[i][j];
                first = false;
            }
        }
    }
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            if (s.adaptation.mask_alpha(i, j)) {
                os << (first ? "" : ", ") << "alpha" << names[i][j];
                first = false;
            }
        }
    }
    if (first) os << "none";
    os << "\n";
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            os << "rho_beta_" << names[i][j] << " = " << d(s.adaptation.rho_beta(i, j)) << "\n";
        }
    }
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            os << "rho_alpha_" << names[i][j] << " = " << d(s.adaptation.rho_alpha(i, j)) << "\n";
        }
    }
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            if (s.adaptation.beta_hat0(i, j) != 1.0) {
                os << "beta0_" << names[i][j] << " = " << d(s.adaptation.beta_hat0(i, j)) << "\n";
            }
            if (s.adaptation.alpha_hat0(i, j) != 0.0) {
                os << "alpha0_" << names[i][j] << " = " << d(s.adaptation.alpha_hat0(i, j)) << "\n";
            }
        }
    }

    os << "\n[reference]\nknots = ";
    for (std::size_t i = 0; i < s.reference.knots.size(); ++i) {
        os << (i ? ", " : "") << d(s.reference.knots[i].first) << ":"
           << d(s.reference.knots[i].second);
    }
    os << "\n\n[disturbance]\nsteps = ";
    if (s.disturbance.steps.empty()) {
        os << "none";
    } else {
        for (std::size_t i = 0; i < s.disturbance.steps.size(); ++i) {
            os << (i ? ", " : "") << d(s.disturbance.steps[i].first) << ":"
               << d(s.disturbance.steps[i].second);
        }
    }
    os << "\n\n[run]\n";
    os << "duration = " << d(s.duration) << "\n";
    os << "sample_time = " << d(s.period) << "\n";
    os << "fine_dt = " << d(s.fine_dt) << "\n";
    os << "seed = " << s.seed << "\n";
    os << "transient_skip = " << d(s.metrics_skip) << "\n";
    return os.str();
}

void apply_half_parameter_error(Scenario& s) {
    const Eigen::Matrix2d a = dc_motor_model(s.motor).A;
    s.adaptation.beta_hat0.setOnes();
    s.adaptation.alpha_hat0.setZero();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            if (s.adaptation.mask_beta(i, j)) s.adaptation.beta_hat0(i, j) = 0.5;
            if (s.adaptation.mask_alpha(i, j)) {
                s.adaptation.alpha_hat0(i, j) = 0.5 * std::abs(a(i, j));
            }
        }
    }
}

ControllerSpec controller_preset(const std::string& token, const ControllerSpec& base) {
    ControllerSpec c = base;
    std::string name = token;
    if (const auto slash = name.find('/'); slash != std::string::npos) {
        const std::string flag = name.substr(slash + 1);
        name = name.substr(0, slash);
        if (flag == "mu") c.use_uncertainty_term = true;
        else if (flag == "nomu") c.use_uncertainty_term = false;
        else throw config_error("unknown controller modifier '" + flag + "'");
    }
    if (name == "first_siso") {
        c.order = 1;
        c.mimo = false;
        c.gain << 0.5, 0.0, 0.0, 0.5;
    } else if (name == "first_mimo") {
        c.order = 1;
        c.mimo = true;
        c.gain << 0.5, 0.05, 0.05, 0.5;
    } else if (name == "second_siso") {
        c.order = 2;
        c.mimo = false;
        c.gain << 0.5, 0.0, 0.0, 0.5;
    } else if (name == "second_mimo") {
        // Negative cross coupling keeps the speed-loop inversion well
        // conditioned at fast sampling; the positive sign shrinks it by
        // gain/T and destabilizes the cascade below T ~ 0.5 s.
        c.order = 2;
        c.mimo = true;
        c.gain << 0.5, -0.1, -0.1, 0.5;
    } else {
        throw config_error("unknown controller preset '" + token + "'");
    }
    return c;
}

Scenario scenario_preset(const std::string& name) {
    Scenario s;  // defaults: first-order SISO, 10-bit ADC, T = 0.2 s
    if (name == "default") {
        return s;
    }
    if (name == "fig3") {
        s.adc.bits = 16;
        s.controller.use_uncertainty_term = false;
        return s;
    }
    if (name == "fig4") {
        s.controller.use_uncertainty_term = false;
        return s;
    }
    if (name == "fig5") {
        s.controller = controller_preset("second_siso", s.controller);
        s.controller.use_uncertainty_term = false;
        s.disturbance.steps = {{30.0, 0.2}, {50.0, 0.0}, {60.0, -0.2}, {75.0, 0.0}};
        return s;
    }
    if (name == "fig6") {
        s.controller = controller_preset("second_siso", s.controller);
        s.period = 1.0;
        s.adc.bits = 4;
        return s;
    }
    if (name == "fig7") {
        s.controller.order = 1;
        s.controller.adaptive = true;
        s.controller.use_uncertainty_term = true;
        apply_half_parameter_error(s);
        return s;
    }
    throw config_error("unknown scenario preset '" + name + "'");
}

}  // namespace dsmc
