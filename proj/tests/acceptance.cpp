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

// Acceptance suite: one PASS/FAIL line per criterion. Optional arguments
// select criteria by number.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <algorithm>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"
#include "thermalcat/bell_chsh.hpp"
#include "thermalcat/bell_measurement.hpp"
#include "thermalcat/error.hpp"
#include "thermalcat/oracle_suite.hpp"
#include "thermalcat/reports.hpp"
#include "thermalcat/teleportation.hpp"

namespace {

using namespace thermalcat;
using Json = nlohmann::json;

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void check(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            detail << " [miss: " << what << "]";
        }
    }
};

Json report(const std::string &command, const Json &config) { return Json::parse(run_report(command, config.dump())); }

void negativity(Outcome &o) {
    const double limit = -4.0 / (kPi * kPi * std::sqrt(std::exp(1.0)));
    const Json pure = report("negativity", {{"V", 1}, {"d", 0}});
    const double w0 = pure["summary"]["min_W"];
    o.detail << "min W(1,0)=" << w0;
    o.check(std::abs(w0 - -0.144) <= 5e-3, "V=1,d=0 within 5e-3 of -0.144");
    for (auto [V, d] : {std::pair{1e4, 0.0}, std::pair{1.0, 6.0}}) {
        const Json r = report("negativity", {{"V", V}, {"d", d}});
        const double w = r["summary"]["min_W"];
        const double closed = r["summary"]["reference"]["closed_form"];
        const Json &row = r["rows"][0];
        const double dist = std::hypot(std::hypot(row[5].get<double>() + 0.5, row[6].get<double>()),
                                       std::hypot(row[7].get<double>(), row[8].get<double>()));
        o.detail << "; min W(" << V << "," << d << ")=" << w << " closed=" << closed << " |argmin-(-1/2,0)|=" << dist;
        o.check(std::abs(w - limit) <= 2e-3, "limit -4/(pi^2 sqrt e) within 2e-3");
        o.check(std::abs(closed - w) <= 1e-3, "closed form vs grid minimum within 1e-3");
        o.check(dist < 0.05, "minimum near (-1/2, 0)");
    }
}

void interference(Outcome &o) {
    const std::vector<std::tuple<double, double, std::string>> cases = {
        {100.0, 100.0, "pi"}, {1000.0, 300.0, "pi"}, {5.0, 2000.0, "pi/1000"}};
    for (const auto &[V, d, phi] : cases) {
        const Json r = report("visibility", {{"V", V}, {"d", d}, {"phi", phi}, {"sign", -1}});
        const double v = r["summary"]["visibility"];
        o.detail << "v(" << V << "," << d << "," << phi << ")=1-" << 1.0 - v << ";";
        o.check(std::abs(v - 1.0) <= 1e-9, "visibility 1 within 1e-9 at V=" + std::to_string(V));
    }
    const double s1 = report("visibility", {{"V", 1}, {"d", 300}, {"sign", -1}})["summary"]["fringe_spacing"];
    const double s2 = report("visibility", {{"V", 1000}, {"d", 300}, {"sign", -1}})["summary"]["fringe_spacing"];
    o.detail << " spacing V=1 " << s1 << " V=1000 " << s2;
    o.check(s1 > 0.0 && std::abs(s2 / s1 - 1.0) <= 1e-6, "spacing independent of V");
}

void symmetric(Outcome &o) {
    const PhaseSpaceState plus = thermal_superposition(100.0, 0.0, kPi, 1);
    const double grid_min =
        report("wigner-grid", {{"V", 100}, {"d", 0}, {"sign", 1}})["summary"]["grid_min_W"].get<double>();
    MinimumConfig cfg;
    cfg.lower = {-3.0, -3.0};
    cfg.upper = {3.0, 3.0};
    const double refined = min_wigner(plus, cfg).value;
    double min_var = INFINITY;
    for (int k = 0; k < 64; ++k) {
        min_var = std::min(min_var, moments(plus, 0, kPi * k / 64.0).quadrature_variance);
    }
    const double pur = purity(plus);
    const cplx origin[] = {0.0};
    const double w_minus = state_wigner(thermal_superposition(100.0, 0.0, kPi, -1), origin);
    o.detail << "rho+ grid min " << grid_min << " refined " << refined << " min var " << min_var << " purity " << pur
             << "; rho- W(0)+2/pi=" << w_minus + 2.0 / kPi;
    o.check(grid_min >= -1e-9 && refined >= -1e-9, "rho+ Wigner nonnegative");
    o.check(min_var >= 0.5 - 1e-9, "no squeezing");
    o.check(pur < 1.0, "mixed");
    o.check(std::abs(w_minus + 2.0 / kPi) <= 1e-10, "rho- W(0) = -2/pi");
}

void chsh(Outcome &o) {
    const ChshConfig cfg;  // 32 restarts
    const double tsirelson = 2.0 * std::numbers::sqrt2;
    double worst = 0.0;
    int points = 0;
    auto track = [&](const ChshSweep &s) {
        for (const ChshSweepRow &r : s.rows) {
            worst = std::max(worst, r.result.value);
            ++points;
        }
    };
    for (ChshFamily f : {ChshFamily::kTwoModeThermal, ChshFamily::kBsEntangled}) {
        const ChshSweep s = chsh_sweep(f, 100.0, {100.0}, {kPi}, cfg);
        track(s);
        const double b = s.rows.front().result.value;
        o.detail << chsh_family_name(f) << "(100,100)=" << b << "; ";
        o.check(b >= 2.80, std::string(chsh_family_name(f)) + " B >= 2.80");
        for (double V : {1.0, 10.0, 100.0, 1000.0}) {
            std::vector<double> ds;
            for (int i = 0; i < 8; ++i) {
                ds.push_back(i * (2.0 * std::sqrt(V) + 2.0) / 7.0);
            }
            track(chsh_sweep(f, V, ds, {kPi}, cfg));
        }
    }
    std::vector<double> thetas;
    for (int i = 0; i < 8; ++i) {
        thetas.push_back(kPi - 0.25 * i / 7.0);
    }
    for (double V : {1.0, 10.0, 20.0}) {
        track(chsh_sweep(ChshFamily::kTwoModeThermal, V, {30.0}, thetas, cfg));
    }
    const double bs = chsh_sweep(ChshFamily::kBsEntangled, 1000.0, {0.0}, {kPi}, cfg).rows.front().result.value;
    track(chsh_sweep(ChshFamily::kBsEntangled, 1000.0, {0.0}, {kPi}, cfg));
    const double w1 = violation_window(ChshFamily::kTwoModeThermal, 1.0, 30.0, cfg).half_width;
    const double w20 = violation_window(ChshFamily::kTwoModeThermal, 20.0, 30.0, cfg).half_width;
    o.detail << "max B over " << points << " points " << worst << "; bs(1000,0)=" << bs << "; window d=30 V=1 " << w1
             << " V=20 " << w20;
    o.check(worst <= tsirelson + 1e-6, "Tsirelson bound");
    o.check(std::abs(bs - 2.3245) <= 0.01, "bs(1000,0) = 2.3245 +- 0.01");
    o.check(w20 < w1, "window narrows from V=1 to V=20");
}

void bell_probabilities(Outcome &o) {
    double worst = 0.0, sum_err = 0.0, forbidden = 0.0;
    int skipped = 0;
    for (double V : {1.0, 2.0, 5.0, 10.0}) {
        for (double d : {0.0, 1.0, 3.0, 8.0}) {
            const double e = std::exp(-4.0 * d * d / V);
            for (BellState b : {BellState::kPhiPlus, BellState::kPhiMinus, BellState::kPsiPlus, BellState::kPsiMinus}) {
                const bool plus = b == BellState::kPhiPlus || b == BellState::kPsiPlus;
                if (!plus && V * V - e <= 0.0) {
                    ++skipped;  // the odd state does not exist at V=1, d=0
                    continue;
                }
                const auto p = outcome_probabilities(b, V, d);
                std::array<double, 4> c{};
                if (plus) {
                    c = {(V + 1.0) * (V + e) / (2.0 * (V * V + e)), 0.0, 0.0,
                         (V - 1.0) * (V - e) / (2.0 * (V * V + e))};
                } else {
                    const double a = (V + 1.0) * (V - e) / (2.0 * (V * V - e));
                    const double m = (V - 1.0) * (V + e) / (2.0 * (V * V - e));
                    c = b == BellState::kPhiMinus ? std::array<double, 4>{0.0, a, m, 0.0}
                                                  : std::array<double, 4>{0.0, m, a, 0.0};
                }
                for (int i = 0; i < 4; ++i) {
                    worst = std::max(worst, std::abs(p[i] - c[i]));
                    if (c[i] == 0.0) {
                        forbidden = std::max(forbidden, std::abs(p[i]));
                    }
                }
                if (plus) {
                    sum_err = std::max(sum_err, std::abs(p[0] + p[3] - 1.0));
                }
            }
        }
    }
    o.detail << "max |pipeline - closed| " << worst << "; max |P++ + P-- - 1| " << sum_err << "; max forbidden "
             << forbidden << "; nonexistent inputs skipped " << skipped;
    o.check(worst <= 1e-10, "pipeline vs closed form");
    o.check(sum_err <= 1e-14, "P++ + P-- = 1");
    o.check(forbidden < 1e-14, "forbidden outcomes");
}

void discrimination(Outcome &o) {
    const double a = distinguishability(10.0, 5.5), b = distinguishability(10.0, 10.0),
                 c = distinguishability(20.0, 7.8);
    const MonteCarloResult mc = monte_carlo_discrimination(10.0, 10.0, 100000, 20260101);
    const double acc = *std::min_element(mc.accuracy.begin(), mc.accuracy.end());
    o.detail << "P_s(10,5.5)=" << a << " P_s(10,10)=" << b << " P_s(20,7.8)=" << c << " MC min accuracy " << acc;
    o.check(std::abs(a - 0.99) <= 0.005, "P_s(10,5.5)");
    o.check(b > 0.99999, "P_s(10,10)");
    o.check(std::abs(c - 0.99) <= 0.005, "P_s(20,7.8)");
    o.check(acc >= 0.9999, "Monte Carlo accuracy");
}

void oracle(Outcome &o) {
    const OracleSuiteResult r = run_oracle_suite(OracleSuiteConfig{});
    o.detail << r.cases.size() << " cases; max Wigner dev " << r.max_wigner_deviation << "; max probability dev "
             << r.max_probability_deviation << "; parity residual " << r.parity_residual;
    o.check(r.max_wigner_deviation < 1e-6, "Wigner deviation");
    o.check(r.max_probability_deviation < 1e-5, "probability deviation");
    o.check(r.parity_residual < 1e-8, "parity");
}

void teleportation(Outcome &o) {
    const double r = 1.0 / std::numbers::sqrt2;
    const std::vector<std::pair<cplx, cplx>> amps = {{1.0, 0.0},
                                                     {0.0, 1.0},
                                                     {r, r},
                                                     {r, -r},
                                                     {r, cplx(0.0, r)},
                                                     {r, cplx(0.0, -r)},
                                                     {0.6, 0.8},
                                                     {0.6, cplx(0.0, 0.8)},
                                                     {0.6, 0.8 * std::exp(cplx(0.0, kPi / 5.0))}};
    int exact = 0, total = 0;
    for (double V : {1.0, 10.0}) {
        for (double d : {2.0, 8.0}) {
            for (const auto &[a, b] : amps) {
                for (const TeleportReport &rep : teleport(a, b, V, d, CorrectionMode::kFormal).reports) {
                    ++total;
                    exact += rep.possible && rep.exact_match;
                }
            }
        }
    }
    std::vector<double> overlaps;
    for (double d : {1.0, 2.0, 4.0, 8.0}) {
        overlaps.push_back(teleport(r, cplx(0.0, r), 1.0, d, CorrectionMode::kPhysical)
                               .reports[static_cast<int>(BellState::kPsiPlus)]
                               .overlap);
    }
    o.detail << "formal exact " << exact << "/" << total << "; physical Psi+ overlaps";
    for (double v : overlaps) {
        o.detail << " " << v;
    }
    o.check(exact == total, "formal round trip");
    o.check(std::is_sorted(overlaps.begin(), overlaps.end(), std::less_equal<>()) &&
                std::adjacent_find(overlaps.begin(), overlaps.end()) == overlaps.end(),
            "strictly increasing");
    o.check(overlaps.back() > 0.99, "overlap > 0.99 at d=8");
}

}  // namespace

int main(int argc, char **argv) {
    const std::vector<std::pair<std::string, std::function<void(Outcome &)>>> criteria = {
        {"negativity limits", negativity},
        {"interference visibility and spacing", interference},
        {"symmetric states", symmetric},
        {"CHSH violation", chsh},
        {"Bell-measurement probabilities", bell_probabilities},
        {"homodyne discrimination", discrimination},
        {"oracle equivalence", oracle},
        {"teleportation", teleportation},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) {
        selected.insert(std::atoi(argv[i]));
    }
    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!selected.empty() && !selected.count(id)) {
            continue;
        }
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail << " [error: " << e.what() << "]";
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !o.pass;
        std::printf("%s %d %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(), seconds,
                    o.detail.str().c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
