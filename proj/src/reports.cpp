// Copyright 2026 The thermalcat Authors
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

#include "thermalcat/reports.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <numbers>
#include <regex>
#include <set>

#include "json.hpp"
#include "thermalcat/bell_chsh.hpp"
#include "thermalcat/bell_measurement.hpp"
#include "thermalcat/error.hpp"
#include "thermalcat/oracle_suite.hpp"
#include "thermalcat/teleportation.hpp"

namespace thermalcat {

namespace {

using Json = nlohmann::ordered_json;
constexpr double kPi = std::numbers::pi;
constexpr const char *kVersion = "0.1.0";

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string_view::npos ? std::string() : std::string(s.substr(b, e - b + 1));
}

std::optional<double> to_number(std::string_view text) {
    const std::string s = trim(text);
    if (s.empty()) {
        return std::nullopt;
    }
    const char *first = s.data() + (s[0] == '+' ? 1 : 0);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

std::vector<std::string> split(std::string_view s, std::string_view sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        const size_t at = s.find(sep, start);
        out.push_back(trim(s.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start)));
        if (at == std::string_view::npos) {
            return out;
        }
        start = at + sep.size();
    }
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) {
        v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    }
    return v;
}

class Params {
   public:
    explicit Params(Json config) : config_(std::move(config)) {
        require(config_.is_object(), "parameters must be a JSON object");
    }

    bool has(const std::string &key) const {
        auto it = config_.find(key);
        return it != config_.end() && !it->is_null();
    }

    double number(const std::string &key, double fallback) {
        double v = fallback;
        if (has(key)) {
            const Json &j = take(key);
            if (j.is_number()) {
                v = j.get<double>();
            } else if (j.is_string() && to_number(j.get<std::string>())) {
                v = *to_number(j.get<std::string>());
            } else {
                fail(ErrorCode::kInvalidArgument, "parameter '" + key + "' must be a number");
            }
        }
        require(std::isfinite(v), "parameter '" + key + "' must be finite");
        echo_[key] = v;
        return v;
    }

    double variance(const std::string &key = "V") {
        const double v = number(key, 1.0);
        require(v >= 1.0, "variance V must satisfy V >= 1");
        return v;
    }

    double angle(const std::string &key, const char *fallback) { return angle(key, Json(std::string(fallback))); }

    double angle(const std::string &key, double fallback) { return angle(key, Json(fallback)); }

    double angle(const std::string &key, const Json &fallback) {
        Json j = has(key) ? take(key) : fallback;
        double v = 0.0;
        if (j.is_number()) {
            v = j.get<double>();
        } else if (j.is_string()) {
            v = parse_angle(j.get<std::string>());
        } else {
            fail(ErrorCode::kInvalidArgument, "parameter '" + key + "' must be an angle");
        }
        echo_[key] = j;
        return v;
    }

    long integer(const std::string &key, long fallback, long min) {
        const double v = number(key, static_cast<double>(fallback));
        require(v == std::floor(v) && std::abs(v) < 9e15, "parameter '" + key + "' must be an integer");
        require(v >= static_cast<double>(min), "parameter '" + key + "' must be at least " + std::to_string(min));
        echo_[key] = static_cast<long>(v);
        return static_cast<long>(v);
    }

    int sign(int fallback, const std::string &key = "sign") {
        const long s = integer(key, fallback, -1);
        require(s == 1 || s == -1, "parameter '" + key + "' must be +1 or -1");
        return static_cast<int>(s);
    }

    std::uint64_t seed(const std::string &key) {
        const Json &j = take(key);
        std::uint64_t v = 0;
        if (j.is_number_unsigned()) {
            v = j.get<std::uint64_t>();
        } else if (j.is_number_integer() && j.get<long long>() >= 0) {
            v = static_cast<std::uint64_t>(j.get<long long>());
        } else if (j.is_string()) {
            const std::string s = trim(j.get<std::string>());
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            require(ec == std::errc() && ptr == s.data() + s.size() && !s.empty(),
                    "parameter '" + key + "' must be a nonnegative integer");
        } else {
            fail(ErrorCode::kInvalidArgument, "parameter '" + key + "' must be a nonnegative integer");
        }
        echo_[key] = v;
        return v;
    }

    std::string text(const std::string &key, const std::string &fallback, std::initializer_list<const char *> allowed) {
        std::string v = fallback;
        if (has(key)) {
            const Json &j = take(key);
            require(j.is_string(), "parameter '" + key + "' must be a string");
            v = j.get<std::string>();
        }
        if (allowed.size() > 0) {
            const bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char *a) { return v == a; });
            std::string list;
            for (const char *a : allowed) {
                list += std::string(list.empty() ? "" : ", ") + a;
            }
            require(ok, "parameter '" + key + "' must be one of: " + list);
        }
        echo_[key] = v;
        return v;
    }

    bool flag(const std::string &key, bool fallback) {
        bool v = fallback;
        if (has(key)) {
            const Json &j = take(key);
            if (j.is_boolean()) {
                v = j.get<bool>();
            } else if (j.is_string() && (j == "true" || j == "false")) {
                v = j == "true";
            } else {
                fail(ErrorCode::kInvalidArgument, "parameter '" + key + "' must be true or false");
            }
        }
        echo_[key] = v;
        return v;
    }

    /// Number, [re, im] or "re,im".
    cplx complex(const std::string &key, cplx fallback) {
        cplx v = fallback;
        Json e = Json::array({fallback.real(), fallback.imag()});
        if (has(key)) {
            const Json &j = take(key);
            e = j;
            if (j.is_number()) {
                v = j.get<double>();
            } else if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
                v = {j[0].get<double>(), j[1].get<double>()};
            } else if (j.is_string()) {
                const std::vector<std::string> parts = split(j.get<std::string>(), ",");
                const auto re = to_number(parts[0]);
                const auto im = parts.size() == 2 ? to_number(parts[1]) : std::optional<double>(0.0);
                require(parts.size() <= 2 && re && im, "parameter '" + key + "' must be a complex number 're,im'");
                v = {*re, *im};
            } else {
                fail(ErrorCode::kInvalidArgument, "parameter '" + key + "' must be a complex number");
            }
        }
        require(std::isfinite(v.real()) && std::isfinite(v.imag()), "parameter '" + key + "' must be finite");
        echo_[key] = e;
        return v;
    }

    /// Number, array, "a,b,c" list or "lo..hi" range sampled at `points` (log-spaced if `log`).
    std::vector<double> values(const std::string &key, std::string_view fallback, bool angles, long points,
                               bool log = false) {
        Json j = has(key) ? take(key) : Json(std::string(fallback));
        echo_[key] = j;
        auto one = [&](const Json &x) {
            if (x.is_number()) {
                return x.get<double>();
            }
            require(x.is_string(), "parameter '" + key + "' has a non-numeric entry");
            if (angles) {
                return parse_angle(x.get<std::string>());
            }
            const auto v = to_number(x.get<std::string>());
            require(v.has_value(), "parameter '" + key + "' has a non-numeric entry");
            return *v;
        };
        std::vector<double> out;
        if (j.is_array()) {
            for (const Json &x : j) {
                out.push_back(one(x));
            }
        } else if (j.is_string() && j.get<std::string>().find("..") != std::string::npos) {
            const std::vector<std::string> ends = split(j.get<std::string>(), "..");
            require(ends.size() == 2, "range '" + key + "' must look like lo..hi");
            const double lo = one(Json(ends[0])), hi = one(Json(ends[1]));
            if (log) {
                require(lo > 0.0 && hi > 0.0, "log-spaced range '" + key + "' needs positive ends");
                for (double e : linspace(std::log(lo), std::log(hi), static_cast<int>(points))) {
                    out.push_back(std::exp(e));
                }
                out.front() = lo;
                out.back() = points > 1 ? hi : lo;
            } else {
                out = linspace(lo, hi, static_cast<int>(points));
            }
        } else if (j.is_string()) {
            for (const std::string &s : split(j.get<std::string>(), ",")) {
                out.push_back(one(Json(s)));
            }
        } else {
            out.push_back(one(j));
        }
        require(!out.empty(), "parameter '" + key + "' is empty");
        for (double v : out) {
            require(std::isfinite(v), "parameter '" + key + "' must be finite");
        }
        return out;
    }

    void finish() const {
        for (auto it = config_.begin(); it != config_.end(); ++it) {
            if (!used_.count(it.key())) {
                fail(ErrorCode::kInvalidArgument, "parameter '" + it.key() + "' does not apply to this configuration");
            }
        }
    }

    const Json &echo() const { return echo_; }

   private:
    const Json &take(const std::string &key) {
        used_.insert(key);
        return config_.at(key);
    }

    Json config_;
    std::set<std::string> used_;
    Json echo_ = Json::object();
};

struct Report {
    Json columns = Json::array();
    Json rows = Json::array();
    Json summary = Json::object();
};

Json nullable(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

BellState parse_bell(const std::string &s) {
    for (BellState b : {BellState::kPhiPlus, BellState::kPhiMinus, BellState::kPsiPlus, BellState::kPsiMinus}) {
        if (s == bell_state_name(b)) {
            return b;
        }
    }
    fail(ErrorCode::kInvalidArgument, "Bell label must be one of Phi+, Phi-, Psi+, Psi-");
}

constexpr std::array<BellState, 4> kLabels = {BellState::kPhiPlus, BellState::kPhiMinus, BellState::kPsiPlus,
                                              BellState::kPsiMinus};

// Single-mode states shared by the grid, marginal, visibility and negativity reports.
struct SingleState {
    std::string kind;
    double variance = 1.0;
    double center = 0.0;
    double phi = kPi;
    /// Distance between the two component centres.
    double separation = 0.0;
    /// Direction of the separation in phase space.
    double separation_angle = 0.0;
    PhaseSpaceState state;
};

SingleState single_state(Params &p) {
    SingleState s;
    s.kind = p.text("state", "superposition", {"superposition", "thermal", "qubit"});
    s.variance = p.variance();
    s.center = p.number("d", 0.0);
    if (s.kind == "superposition") {
        s.phi = p.angle("phi", "pi");
        const int sign = p.sign(-1);
        s.state = thermal_superposition(s.variance, s.center, s.phi, sign);
        const cplx sep = s.center * (1.0 - std::exp(cplx(0.0, s.phi)));
        s.separation = std::abs(sep);
        s.separation_angle = s.separation > 0.0 ? std::arg(sep) : 0.0;
    } else if (s.kind == "qubit") {
        const cplx a = p.complex("a", 1.0 / std::numbers::sqrt2);
        const cplx b = p.complex("b", 1.0 / std::numbers::sqrt2);
        s.state = thermal_qubit(a, b, s.variance, s.center);
        s.separation = 2.0 * std::abs(s.center);
    } else {
        s.state = displaced_thermal(s.variance, s.center);
    }
    return s;
}

double default_half_range(double variance, double center) { return std::abs(center) + 5.0 * std::sqrt(variance); }

struct Axis {
    double lo, hi;
    long points;
};

Axis read_axis(Params &p, const std::string &prefix, double half, long points) {
    Axis a{p.number(prefix + "_min", -half), p.number(prefix + "_max", half), points};
    require(a.hi > a.lo, prefix + "_max must exceed " + prefix + "_min");
    return a;
}

void wigner_rows(const PhaseSpaceState &state, const Axis &ax, const Axis &ap, Report &r, std::optional<double> lead,
                 double &min_value) {
    const WignerFunction w(state);
    for (double x : linspace(ax.lo, ax.hi, static_cast<int>(ax.points))) {
        for (double y : linspace(ap.lo, ap.hi, static_cast<int>(ap.points))) {
            const cplx pt[] = {{x, y}};
            const double v = w(pt);
            min_value = std::min(min_value, v);
            Json row = Json::array();
            if (lead) {
                row.push_back(*lead);
            }
            row.push_back(x);
            row.push_back(y);
            row.push_back(v);
            r.rows.push_back(std::move(row));
        }
    }
}

void report_wigner_grid(Params &p, Report &r) {
    const SingleState s = single_state(p);
    const long points = p.integer("points", 201, 2);
    // Far-displaced states are gridded around their mean amplitude.
    const std::string frame = p.text("frame", "auto", {"auto", "origin", "centred"});
    const bool centred =
        frame == "centred" || (frame == "auto" && std::abs(s.center) > 20.0 * std::sqrt(s.variance));
    const cplx origin = centred ? mean_amplitude(s.state, 0) : 0.0;
    const double half =
        centred ? 0.5 * s.separation + 5.0 * std::sqrt(s.variance) : default_half_range(s.variance, s.center);
    const Axis ax = read_axis(p, "x", half, points), ap = read_axis(p, "p", half, points);
    r.summary["frame_center"] = {origin.real(), origin.imag()};
    r.columns = {"x", "p", "W"};
    double min_value = INFINITY;
    wigner_rows(s.state, {origin.real() + ax.lo, origin.real() + ax.hi, ax.points},
                {origin.imag() + ap.lo, origin.imag() + ap.hi, ap.points}, r, std::nullopt, min_value);
    r.summary["grid_min_W"] = min_value;
    r.summary["purity"] = purity(s.state);
}

QuadratureConvention read_convention(Params &p) {
    return p.text("convention", "real", {"real", "canonical"}) == "real" ? QuadratureConvention::kRealPart
                                                                          : QuadratureConvention::kCanonical;
}

void report_marginal(Params &p, Report &r) {
    const SingleState s = single_state(p);
    const double angle = p.angle("angle", "0");
    const QuadratureConvention conv = read_convention(p);
    const double scale = conv == QuadratureConvention::kRealPart ? 1.0 : std::numbers::sqrt2;
    const Marginal m = marginal_distribution(s.state, 0, angle, conv);
    const double center = p.number("center", m.mean());
    const double half = p.number("half_width", (0.5 * s.separation + 5.0 * std::sqrt(s.variance)) * scale);
    require(half > 0.0, "half_width must be positive");
    const long points = p.integer("points", 201, 2);
    r.columns = {"x", "x_from_center", "P"};
    for (double x : linspace(center - half, center + half, static_cast<int>(points))) {
        r.rows.push_back({x, x - center, m(x)});
    }
    r.summary["mean"] = m.mean();
    r.summary["stddev"] = m.stddev();
    r.summary["total"] = m.total();
    r.summary["mass_in_window"] = m.integral(center - half, center + half);
}

void report_visibility(Params &p, Report &r) {
    const SingleState s = single_state(p);
    const double angle = p.angle("angle", s.separation_angle + kPi / 2.0);
    const QuadratureConvention conv = read_convention(p);
    const FringeMetrics f = fringe_metrics(s.state, 0, angle, conv);
    r.columns = {"V", "d", "phi", "angle", "has_fringes", "visibility", "fringe_spacing", "maxima_spacing",
                 "maxima", "i_max", "i_min", "frame_center"};
    r.rows.push_back({s.variance, s.center, s.phi, angle, f.has_fringes, f.visibility, f.fringe_spacing,
                      f.maxima_spacing, f.maxima, f.i_max, f.i_min, f.frame_center});
    r.summary["visibility"] = f.visibility;
    r.summary["fringe_spacing"] = f.fringe_spacing;
}

void report_negativity(Params &p, Report &r) {
    const std::string kind = p.text("state", "hybrid", {"hybrid", "superposition", "two-mode"});
    const double V = p.variance();
    const double d = p.number("d", 0.0);
    const double phi = p.angle("phi", "pi");
    const int sign = kind == "hybrid" ? 1 : p.sign(-1);
    const cplx mid = 0.5 * d * (1.0 + std::exp(cplx(0.0, phi)));
    const double beta_radius = p.number("beta_radius", 2.0 / std::sqrt(V));
    const long resolution = p.integer("resolution", 101, 3);
    require(beta_radius > 0.0, "beta_radius must be positive");
    MinimumConfig cfg;
    cfg.resolution = static_cast<int>(resolution);
    auto box = [&](cplx c, double radius) {
        cfg.lower.insert(cfg.lower.end(), {c.real() - radius, c.imag() - radius});
        cfg.upper.insert(cfg.upper.end(), {c.real() + radius, c.imag() + radius});
    };
    MinimumResult res;
    Json reference = Json::object();
    if (kind == "hybrid") {
        const double alpha_radius = p.number("alpha_radius", 1.5);
        require(alpha_radius > 0.0, "alpha_radius must be positive");
        const double r2 = 1.0 / std::numbers::sqrt2;
        const HybridState h = micro_macro_entangle({r2, r2}, displaced_thermal(V, d), 0, {phi});
        box(0.0, alpha_radius);
        box(mid, beta_radius);
        res = minimize_on_box(
            [&](std::span<const double> c) {
                const cplx q[] = {{c[0], c[1]}};
                const cplx f[] = {{c[2], c[3]}};
                return h.wigner(q, f);
            },
            cfg);
        // Closed form at alpha = -1/2, beta = 0 for phi = pi.
        const cplx q[] = {-0.5}, f[] = {0.0};
        reference["point"] = {-0.5, 0.0, 0.0, 0.0};
        reference["value"] = h.wigner(q, f);
        reference["closed_form"] = 2.0 * (-2.0 + std::exp(-2.0 * d * d / V) / V) / (kPi * kPi * std::sqrt(std::exp(1.0)));
    } else if (kind == "superposition") {
        const PhaseSpaceState s = thermal_superposition(V, d, phi, sign);
        box(mid, beta_radius);
        res = min_wigner(s, cfg);
    } else {
        const PhaseSpaceState s = two_mode_thermal_entangled(V, d, sign, phi);
        box(mid, beta_radius);
        box(mid, beta_radius);
        res = min_wigner(s, cfg);
    }
    r.columns = {"state", "V", "d", "phi", "min_W", "x1", "p1", "x2", "p2", "support_warning"};
    Json row = {kind, V, d, phi, res.value};
    for (size_t i = 0; i < 4; ++i) {
        row.push_back(i < res.point.size() ? Json(res.point[i]) : Json(nullptr));
    }
    row.push_back(res.support_warning);
    r.rows.push_back(std::move(row));
    r.summary["min_W"] = res.value;
    if (!reference.empty()) {
        r.summary["reference"] = reference;
    }
}

void report_kerr_movie(Params &p, Report &r) {
    const double V = p.variance();
    const double d = p.number("d", 0.0);
    const int sign = p.sign(1);
    const std::vector<double> thetas = p.values("theta", "0,pi/32,pi/16,3.102,3.122,pi", true, 1);
    const long points = p.integer("points", 201, 2);
    const double half = default_half_range(V, d);
    const Axis ax = read_axis(p, "x", half, points), ap = read_axis(p, "p", half, points);
    const std::vector<PhaseSpaceState> frames = kerr_time_series(V, d, thetas, sign);
    r.columns = {"theta", "x", "p", "W"};
    Json frames_summary = Json::array();
    const double r2 = 1.0 / std::numbers::sqrt2;
    for (size_t i = 0; i < frames.size(); ++i) {
        double min_value = INFINITY;
        wigner_rows(frames[i], ax, ap, r, thetas[i], min_value);
        const MeasurementOutcome m =
            measure_qubit(micro_macro_entangle({r2, r2}, displaced_thermal(V, d), 0, {thetas[i]}), sign);
        frames_summary.push_back(
            {{"theta", thetas[i]}, {"probability", m.probability}, {"grid_min_W", min_value}, {"purity", purity(frames[i])}});
    }
    r.summary["frames"] = std::move(frames_summary);
}

ChshFamily read_family(Params &p) {
    return p.text("family", "tm", {"tm", "bs"}) == "tm" ? ChshFamily::kTwoModeThermal : ChshFamily::kBsEntangled;
}

ChshConfig read_chsh_config(Params &p) {
    ChshConfig c;
    c.restarts = static_cast<int>(p.integer("restarts", c.restarts, 0));
    if (p.has("seed")) {
        c.seed = p.seed("seed");
    }
    c.box_radius = p.number("box_radius", 0.0);
    return c;
}

void chsh_row(const ChshSweepRow &row, Report &r) {
    const ChshSettings &s = row.result.argmax;
    r.rows.push_back({chsh_family_name(row.family), row.variance, row.center, row.theta, row.result.value,
                      row.result.signed_value, row.result.converged, row.result.restarts_used, s.alpha.real(),
                      s.alpha.imag(), s.alpha_prime.real(), s.alpha_prime.imag(), s.beta.real(), s.beta.imag(),
                      s.beta_prime.real(), s.beta_prime.imag()});
}

const Json kChshColumns = {"family", "V", "d", "theta", "B", "signed_B", "converged", "starts", "alpha_re", "alpha_im",
                           "alpha2_re", "alpha2_im", "beta_re", "beta_im", "beta2_re", "beta2_im"};

void report_chsh_optimize(Params &p, Report &r) {
    const ChshFamily family = read_family(p);
    const double V = p.variance();
    const double d = p.number("d", 0.0);
    const double theta = p.angle("theta", "pi");
    const ChshConfig cfg = read_chsh_config(p);
    const ChshSweep sweep = chsh_sweep(family, V, {d}, {theta}, cfg);
    r.columns = kChshColumns;
    chsh_row(sweep.rows.front(), r);
    r.summary["B"] = sweep.rows.front().result.value;
    r.summary["trace"] = sweep.rows.front().result.trace;
}

void report_chsh_sweep(Params &p, Report &r) {
    const ChshFamily family = read_family(p);
    const long points = p.integer("points", 40, 1);
    const bool log = p.flag("log", false);
    const std::vector<double> variances = p.values("V", "1", false, points, log);
    const std::vector<double> centers = p.values("d", "0", false, points);
    const std::vector<double> thetas = p.values("theta", "pi", true, points);
    const ChshConfig cfg = read_chsh_config(p);
    const bool window = p.flag("window", false);
    const double resolution = p.number("window_resolution", 1e-3);
    for (double V : variances) {
        require(V >= 1.0, "variance V must satisfy V >= 1");
    }
    r.columns = kChshColumns;
    double best = 0.0;
    int decreases = 0;
    Json windows = Json::array();
    for (double V : variances) {
        const ChshSweep sweep = chsh_sweep(family, V, centers, thetas, cfg);
        decreases += sweep.decreases;
        for (const ChshSweepRow &row : sweep.rows) {
            chsh_row(row, r);
            best = std::max(best, row.result.value);
        }
        if (window) {
            for (double d : centers) {
                const ViolationWindow w = violation_window(family, V, d, cfg, resolution);
                windows.push_back({{"V", V}, {"d", d}, {"half_width", w.half_width}, {"evaluations", w.evaluations}});
            }
        }
    }
    r.summary["max_B"] = best;
    r.summary["within_bound"] = best <= 2.0 * std::numbers::sqrt2 + 1e-6;
    r.summary["decreases"] = decreases;
    if (window) {
        r.summary["violation_windows"] = std::move(windows);
    }
}

void report_bell_measure(Params &p, Report &r) {
    const std::string view = p.text("view", "probabilities", {"probabilities", "homodyne"});
    if (view == "homodyne") {
        const double V = p.variance();
        const double d = p.number("d", 1.0);
        const std::string outcome_name = p.text("outcome", "++", {"++", "+-", "-+", "--"});
        const Detector detector = p.text("detector", "C", {"C", "D"}) == "C" ? Detector::kC : Detector::kD;
        const double half = p.number("half_width", 2.0 * std::abs(d) + 5.0 * std::sqrt(V));
        const long points = p.integer("points", 201, 2);
        QubitOutcome outcome = QubitOutcome::kPlusPlus;
        for (int q = 0; q < 4; ++q) {
            if (outcome_name == qubit_outcome_name(static_cast<QubitOutcome>(q))) {
                outcome = static_cast<QubitOutcome>(q);
            }
        }
        r.columns = {"x"};
        std::vector<Marginal> densities;
        for (BellState label : kLabels) {
            if (outcome_probabilities(label, V, d)[static_cast<int>(outcome)] <= 0.0) {
                continue;
            }
            densities.push_back(homodyne_distribution(label, outcome, detector, V, d));
            r.columns.push_back(std::string("P_") + bell_state_name(label));
        }
        for (double x : linspace(-half, half, static_cast<int>(points))) {
            Json row = {x};
            for (const Marginal &m : densities) {
                row.push_back(m(x));
            }
            r.rows.push_back(std::move(row));
        }
        return;
    }
    const long points = p.integer("points", 40, 1);
    const bool log = p.flag("log", false);
    const std::vector<double> variances = p.values("V", "10", false, points, log);
    const std::vector<double> centers = p.values("d", "1", false, points);
    r.columns = {"input", "V", "d", "P_pp", "P_pm", "P_mp", "P_mm", "n_a", "n_b", "n_many", "n_few"};
    for (double V : variances) {
        require(V >= 1.0, "variance V must satisfy V >= 1");
        for (double d : centers) {
            for (BellState label : kLabels) {
                Json row = {bell_state_name(label), V, d};
                try {
                    const std::array<double, 4> probs = outcome_probabilities(label, V, d);
                    const PhotonSplit n = mean_photon_split(label, V, d);
                    for (double v : probs) {
                        row.push_back(v);
                    }
                    row.insert(row.end(), {n.n_a, n.n_b, n.n_many, n.n_few});
                } catch (const Error &e) {
                    if (e.code() != ErrorCode::kImpossibleOutcome) {
                        throw;
                    }
                    for (int i = 0; i < 8; ++i) {
                        row.push_back(nullptr);
                    }
                }
                r.rows.push_back(std::move(row));
            }
        }
    }
}

void report_distinguish(Params &p, Report &r) {
    const long trials = p.integer("trials", 0, 0);
    if (trials > 0) {
        require(p.has("seed"), "seed is required for Monte Carlo discrimination");
        const std::uint64_t seed = p.seed("seed");
        const double V = p.variance();
        const double d = p.number("d", 10.0);
        const MonteCarloResult mc = monte_carlo_discrimination(V, d, trials, seed);
        r.columns = {"input", "decided_Phi+", "decided_Phi-", "decided_Psi+", "decided_Psi-", "accuracy"};
        for (int i = 0; i < 4; ++i) {
            Json row = {bell_state_name(kLabels[i])};
            for (long c : mc.confusion[i]) {
                row.push_back(c);
            }
            row.push_back(mc.accuracy[i]);
            r.rows.push_back(std::move(row));
        }
        r.summary["trials_per_label"] = mc.trials_per_label;
        r.summary["min_accuracy"] = *std::min_element(mc.accuracy.begin(), mc.accuracy.end());
        r.summary["P_s"] = distinguishability(V, d);
        return;
    }
    const long points = p.integer("points", 40, 1);
    const bool log = p.flag("log", false);
    const std::vector<double> variances = p.values("V", "10", false, points, log);
    const std::vector<double> centers = p.values("d", "5.5", false, points);
    const std::string rule = p.text("threshold", "d", {});
    r.columns = {"V", "d", "threshold", "P_s"};
    for (double V : variances) {
        require(V >= 1.0, "variance V must satisfy V >= 1");
        for (double d : centers) {
            double t = std::abs(d);
            if (rule == "likelihood") {
                t = likelihood_threshold(V, d);
            } else if (rule != "d") {
                const auto v = to_number(rule);
                require(v.has_value() && *v >= 0.0, "threshold must be 'd', 'likelihood' or a nonnegative number");
                t = *v;
            }
            r.rows.push_back({V, d, t, distinguishability(V, d, t)});
        }
    }
}

void report_teleport(Params &p, Report &r) {
    const cplx a = p.complex("a", 1.0 / std::numbers::sqrt2);
    const cplx b = p.complex("b", 1.0 / std::numbers::sqrt2);
    const long points = p.integer("points", 4, 1);
    const std::vector<double> variances = p.values("V", "1", false, points);
    const std::vector<double> centers = p.values("d", "1,2,4,8", false, points);
    const CorrectionMode mode =
        p.text("mode", "formal", {"formal", "physical"}) == "formal" ? CorrectionMode::kFormal : CorrectionMode::kPhysical;
    const BellState channel = parse_bell(p.text("channel", "Psi-", {"Phi+", "Phi-", "Psi+", "Psi-"}));
    r.columns = {"V", "d", "outcome", "correction", "probability", "formal_probability", "overlap", "exact_match"};
    bool all_exact = true;
    double worst_sum = 0.0;
    for (double V : variances) {
        require(V >= 1.0, "variance V must satisfy V >= 1");
        for (double d : centers) {
            const TeleportResult t = teleport(a, b, V, d, mode, channel);
            double sum = 0.0;
            for (const TeleportReport &rep : t.reports) {
                sum += rep.probability;
                all_exact = all_exact && rep.exact_match;
                if (!rep.possible) {
                    r.rows.push_back({V, d, bell_state_name(rep.outcome), "impossible", rep.probability,
                                      rep.formal_probability, nullptr, false});
                    continue;
                }
                r.rows.push_back({V, d, bell_state_name(rep.outcome), correction_name(rep.correction), rep.probability,
                                  rep.formal_probability, rep.overlap, rep.exact_match});
            }
            worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
        }
    }
    r.summary["all_exact"] = all_exact;
    r.summary["max_probability_sum_error"] = worst_sum;
}

void report_oracle_check(Params &p, Report &r) {
    OracleSuiteConfig c;
    c.max_variance = p.number("max_V", c.max_variance);
    c.max_center = p.number("max_d", c.max_center);
    c.grid_points = static_cast<int>(p.integer("grid_points", c.grid_points, 2));
    c.grid_radius = p.number("grid_radius", c.grid_radius);
    c.dense_cutoff_limit = static_cast<int>(p.integer("dense_cutoff", c.dense_cutoff_limit, 1));
    require(c.max_variance >= 1.0, "max_V must be at least 1");
    require(c.max_center >= 0.0, "max_d must be nonnegative");
    const OracleSuiteResult res = run_oracle_suite(c);
    r.columns = {"state", "V", "d", "phi", "sign", "route", "cutoff", "deficit", "wigner_deviation",
                 "probability_deviation", "impossible"};
    for (const OracleCase &oc : res.cases) {
        r.rows.push_back({oc.state, oc.variance, oc.center, oc.phi, oc.sign, oc.route, oc.cutoff, oc.deficit,
                          nullable(oc.wigner_deviation), nullable(oc.probability_deviation), oc.impossible});
    }
    r.summary["status"] = res.passed ? "PASS" : "FAIL";
    r.summary["max_wigner_deviation"] = res.max_wigner_deviation;
    r.summary["max_probability_deviation"] = res.max_probability_deviation;
    r.summary["parity_residual"] = res.parity_residual;
    r.summary["even_parity_probability_fock"] = res.parity_fock;
    r.summary["parity_expectation_closed_form"] = res.parity_closed_form;
    r.summary["tolerances"] = {{"wigner", c.wigner_tolerance},
                               {"probability", c.probability_tolerance},
                               {"parity", c.parity_tolerance}};
}

using Builder = std::function<void(Params &, Report &)>;

struct Command {
    std::string name;
    Builder build;
    std::vector<std::string> keys;
};

const std::vector<Command> &builders() {
    static const std::vector<Command> table = {
        {"wigner-grid",
         report_wigner_grid,
         {"state", "V", "d", "phi", "sign", "a", "b", "points", "frame", "x_min", "x_max", "p_min", "p_max"}},
        {"marginal",
         report_marginal,
         {"state", "V", "d", "phi", "sign", "a", "b", "angle", "convention", "center", "half_width", "points"}},
        {"negativity",
         report_negativity,
         {"state", "V", "d", "phi", "sign", "alpha_radius", "beta_radius", "resolution"}},
        {"visibility", report_visibility, {"state", "V", "d", "phi", "sign", "a", "b", "angle", "convention"}},
        {"kerr-movie", report_kerr_movie, {"V", "d", "sign", "theta", "points", "x_min", "x_max", "p_min", "p_max"}},
        {"chsh-optimize", report_chsh_optimize, {"family", "V", "d", "theta", "restarts", "box_radius", "seed"}},
        {"chsh-sweep",
         report_chsh_sweep,
         {"family", "V", "d", "theta", "points", "log", "restarts", "box_radius", "window", "window_resolution",
          "seed"}},
        {"bell-measure",
         report_bell_measure,
         {"view", "V", "d", "points", "log", "outcome", "detector", "half_width"}},
        {"distinguish", report_distinguish, {"V", "d", "points", "log", "threshold", "trials", "seed"}},
        {"teleport", report_teleport, {"a", "b", "V", "d", "points", "mode", "channel"}},
        {"oracle-check", report_oracle_check, {"max_V", "max_d", "grid_points", "grid_radius", "dense_cutoff"}},
    };
    return table;
}

}  // namespace

const char *library_version() { return kVersion; }

double parse_angle(std::string_view text) {
    const std::string s = trim(text);
    if (const auto v = to_number(s)) {
        return *v;
    }
    static const std::regex pattern(R"(^([+-]?)\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*pi\s*(?:/\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?))?$)",
                                    std::regex::icase);
    std::smatch m;
    if (!std::regex_match(s, m, pattern)) {
        fail(ErrorCode::kInvalidArgument, "cannot parse angle '" + s + "'");
    }
    double v = kPi;
    if (m[2].matched) {
        v *= *to_number(m[2].str());
    }
    if (m[3].matched) {
        const double den = *to_number(m[3].str());
        require(den != 0.0, "angle denominator must be nonzero");
        v /= den;
    }
    return m[1].str() == "-" ? -v : v;
}

const std::vector<std::string> &report_commands() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const Command &c : builders()) {
            n.push_back(c.name);
        }
        return n;
    }();
    return names;
}

std::string run_report(std::string_view command, std::string_view config_json) {
    const auto &table = builders();
    auto it = std::find_if(table.begin(), table.end(), [&](const Command &c) { return c.name == command; });
    if (it == table.end()) {
        fail(ErrorCode::kInvalidArgument, "unknown command '" + std::string(command) + "'");
    }
    Json config = config_json.empty() ? Json::object() : Json::parse(config_json, nullptr, false);
    if (config.is_discarded()) {
        fail(ErrorCode::kInvalidArgument, "configuration is not valid JSON");
    }
    require(config.is_object(), "parameters must be a JSON object");
    for (auto kv = config.begin(); kv != config.end(); ++kv) {
        if (std::find(it->keys.begin(), it->keys.end(), kv.key()) == it->keys.end()) {
            fail(ErrorCode::kInvalidArgument, "unknown parameter '" + kv.key() + "' for " + it->name);
        }
    }
    Params params(std::move(config));
    Report report;
    it->build(params, report);
    params.finish();
    Json doc = {{"command", std::string(command)},
                {"version", kVersion},
                {"parameters", params.echo()},
                {"columns", std::move(report.columns)},
                {"rows", std::move(report.rows)},
                {"summary", std::move(report.summary)}};
    return doc.dump();
}

}  // namespace thermalcat
