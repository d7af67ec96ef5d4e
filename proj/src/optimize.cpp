#include "nlvrp/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "nlvrp/parallel.hpp"

namespace nlvrp {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
    while (a >= kPi) a -= 2.0 * kPi;
    while (a < -kPi) a += 2.0 * kPi;
    return a;
}

struct Axis {
    std::vector<double> values, cosines, sines;
};

Axis make_axis(double lo, double hi_inclusive, double step) {
    Axis axis;
    for (double v = lo; v <= hi_inclusive + 1e-12; v += step) axis.values.push_back(v);
    axis.cosines.reserve(axis.values.size());
    axis.sines.reserve(axis.values.size());
    for (const double v : axis.values) {
        axis.cosines.push_back(std::cos(v));
        axis.sines.push_back(std::sin(v));
    }
    return axis;
}

Axis make_angle_axis(double step) {
    Axis axis;
    const std::size_t count = static_cast<std::size_t>(std::floor(2.0 * kPi / step + 1e-9));
    for (std::size_t k = 0; k < count; ++k) axis.values.push_back(-kPi + k * step);
    for (const double v : axis.values) {
        axis.cosines.push_back(std::cos(v));
        axis.sines.push_back(std::sin(v));
    }
    return axis;
}

struct GridBest {
    double value;
    std::size_t flat;
};

// Best point within one (theta, a0) slab, scanning the remaining axes in
// ascending order; first strict maximum wins.
GridBest scan_slab(const MomentObjective& obj, const Axis& theta, const Axis& angle,
                   std::size_t it, std::size_t ia0) {
    const std::size_t n = angle.values.size();
    const double c2t = theta.cosines[it] * theta.cosines[it] - theta.sines[it] * theta.sines[it];
    const double s2t = 2.0 * theta.sines[it] * theta.cosines[it];
    const double ca0 = angle.cosines[ia0], sa0 = angle.sines[ia0];

    GridBest best{-std::numeric_limits<double>::infinity(), 0};
    for (std::size_t ia1 = 0; ia1 < n; ++ia1) {
        const double ca1 = angle.cosines[ia1], sa1 = angle.sines[ia1];
        const double margA0 = ca0 * c2t, margA1 = ca1 * c2t;
        const double margA_term = obj.marg_first_w[0] * margA0 + obj.marg_first_w[1] * margA1;
        for (std::size_t ib0 = 0; ib0 < n; ++ib0) {
            const double cb0 = angle.cosines[ib0], sb0 = angle.sines[ib0];
            const double corr00 = ca0 * cb0 + s2t * sa0 * sb0;
            const double corr10 = ca1 * cb0 + s2t * sa1 * sb0;
            const double part0 = obj.constant + margA_term +
                                 obj.marg_second_w[0] * cb0 * c2t +
                                 obj.corr_w[0] * corr00 + obj.corr_w[2] * corr10;
            for (std::size_t ib1 = 0; ib1 < n; ++ib1) {
                const double cb1 = angle.cosines[ib1], sb1 = angle.sines[ib1];
                const double corr01 = ca0 * cb1 + s2t * sa0 * sb1;
                const double corr11 = ca1 * cb1 + s2t * sa1 * sb1;
                const double v = part0 + obj.marg_second_w[1] * cb1 * c2t +
                                 obj.corr_w[1] * corr01 + obj.corr_w[3] * corr11;
                if (v > best.value) {
                    best.value = v;
                    best.flat = (ia1 * n + ib0) * n + ib1;
                }
            }
        }
    }
    return best;
}

GridSearchResult grid_search_impl(const MomentObjective& obj, double step, bool parallel) {
    const Axis theta = make_axis(0.0, kPi / 4.0, step);
    const Axis angle = make_angle_axis(step);
    const std::size_t nt = theta.values.size();
    const std::size_t na = angle.values.size();
    const std::size_t slabs = nt * na;

    std::vector<GridBest> per_slab(slabs);
    if (parallel) {
        const int workers = worker_count();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(workers)
#endif
        for (std::int64_t slab = 0; slab < static_cast<std::int64_t>(slabs); ++slab) {
            per_slab[slab] = scan_slab(obj, theta, angle, slab / na, slab % na);
        }
        (void)workers;
    } else {
        for (std::size_t slab = 0; slab < slabs; ++slab) {
            per_slab[slab] = scan_slab(obj, theta, angle, slab / na, slab % na);
        }
    }

    // Deterministic merge in slab order; ties keep the earlier slab.
    std::size_t best_slab = 0;
    for (std::size_t slab = 1; slab < slabs; ++slab) {
        if (per_slab[slab].value > per_slab[best_slab].value) best_slab = slab;
    }
    const GridBest& b = per_slab[best_slab];
    const std::size_t it = best_slab / na;
    const std::size_t ia0 = best_slab % na;
    const std::size_t ib1 = b.flat % na;
    const std::size_t ib0 = (b.flat / na) % na;
    const std::size_t ia1 = b.flat / (na * na);

    QuantumStrategy s{theta.values[it], angle.values[ia0], angle.values[ia1],
                      angle.values[ib0], angle.values[ib1]};
    return GridSearchResult{s, b.value, static_cast<std::int64_t>(slabs * na * na * na)};
}

} // namespace

MomentObjective MomentObjective::from_game(const PayoffTable& table, const TypePrior& prior) {
    MomentObjective obj;
    for (int t1 = 1; t1 <= 2; ++t1) {
        for (int t2 = 1; t2 <= 2; ++t2) {
            const double w = 0.25 * prior.p(t1, t2);
            const double p11 = table.total(t1, t2, 1, 1);
            const double p12 = table.total(t1, t2, 1, 2);
            const double p21 = table.total(t1, t2, 2, 1);
            const double p22 = table.total(t1, t2, 2, 2);
            obj.constant += w * (p11 + p12 + p21 + p22);
            obj.corr_w[pair_index(t1, t2)] += w * (p11 - p12 - p21 + p22);
            obj.marg_first_w[t1 - 1] += w * (p11 + p12 - p21 - p22);
            obj.marg_second_w[t2 - 1] += w * (p11 - p12 + p21 - p22);
        }
    }
    return obj;
}

MomentObjective MomentObjective::chsh() {
    MomentObjective obj;
    obj.corr_w = {1.0, 1.0, 1.0, -1.0};
    return obj;
}

MomentObjective MomentObjective::tilted_expression(double zeta) {
    // CHSH + 2 zeta m0 with m0 = (1 + <A0>)/2.
    MomentObjective obj = chsh();
    obj.constant = zeta;
    obj.marg_first_w[0] = zeta;
    return obj;
}

GridSearchResult quantum_grid_search(const MomentObjective& objective, double step,
                                     bool parallel) {
    return grid_search_impl(objective, step, parallel);
}

GridSearchResult quantum_grid_search_serial(const MomentObjective& objective, double step) {
    return grid_search_impl(objective, step, false);
}

QuantumStrategy refine_strategy(const MomentObjective& objective, QuantumStrategy start,
                                double initial_step, double step_tol,
                                std::int64_t* evaluations) {
    std::int64_t evals = 0;
    auto value_of = [&](const QuantumStrategy& s) {
        ++evals;
        return objective.eval(moments_of(s));
    };

    QuantumStrategy current = start;
    current.theta = std::clamp(current.theta, 0.0, kPi / 4.0);
    current.a0 = wrap_angle(current.a0);
    current.a1 = wrap_angle(current.a1);
    current.b0 = wrap_angle(current.b0);
    current.b1 = wrap_angle(current.b1);
    double best = value_of(current);

    double step = initial_step;
    while (step > step_tol && evals < 2'000'000) {
        bool improved = true;
        while (improved && evals < 2'000'000) {
            improved = false;
            for (int c = 0; c < 5; ++c) {
                for (const double delta : {step, -step}) {
                    QuantumStrategy candidate = current;
                    double* coord = c == 0 ? &candidate.theta
                                           : (c == 1   ? &candidate.a0
                                              : c == 2 ? &candidate.a1
                                              : c == 3 ? &candidate.b0
                                                       : &candidate.b1);
                    *coord += delta;
                    if (c == 0) {
                        *coord = std::clamp(*coord, 0.0, kPi / 4.0);
                    } else {
                        *coord = wrap_angle(*coord);
                    }
                    const double v = value_of(candidate);
                    if (v > best) {
                        best = v;
                        current = candidate;
                        improved = true;
                    }
                }
            }
        }
        step *= 0.5;
    }
    if (evaluations) *evaluations += evals;
    return current;
}

OptimizationOutcome classical_optimum(const PayoffTable& table, const TypePrior& prior) {
    const auto& vertices = local_deterministic_vertices();
    int best = 0;
    double best_value = earnings(table, prior, vertices[0]);
    for (int k = 1; k < 16; ++k) {
        const double v = earnings(table, prior, vertices[k]);
        if (v > best_value) {
            best_value = v;
            best = k;
        }
    }
    return OptimizationOutcome{StrategyClass::Classical,
                               best_value,
                               vertices[best],
                               chsh_value(vertices[best]),
                               all_deterministic_strategies()[best],
                               std::nullopt,
                               16};
}

OptimizationOutcome ns_optimum(const PayoffTable& table, const TypePrior& prior) {
    const auto& vertices = ns_extremal_vertices();
    std::size_t best = 0;
    double best_value = earnings(table, prior, vertices[0]);
    for (std::size_t k = 1; k < vertices.size(); ++k) {
        const double v = earnings(table, prior, vertices[k]);
        if (v > best_value) {
            best_value = v;
            best = k;
        }
    }
    OptimizationOutcome outcome{StrategyClass::NoSignaling,
                                best_value,
                                vertices[best],
                                chsh_value(vertices[best]),
                                std::nullopt,
                                std::nullopt,
                                static_cast<std::int64_t>(vertices.size())};
    if (best < 16) outcome.deterministic_witness = all_deterministic_strategies()[best];
    return outcome;
}

QuantumStrategy embed_deterministic(const DeterministicStrategy& s) {
    auto angle = [](int tollway) { return tollway == 1 ? 0.0 : -kPi; };
    return QuantumStrategy{0.0, angle(s.first[0]), angle(s.first[1]), angle(s.second[0]),
                           angle(s.second[1])};
}

OptimizationOutcome quantum_optimum(const PayoffTable& table, const TypePrior& prior,
                                    const QuantumSearchSettings& settings) {
    const MomentObjective obj = MomentObjective::from_game(table, prior);
    std::int64_t evals = 0;

    std::vector<QuantumStrategy> candidates;
    if (settings.use_grid) {
        const GridSearchResult grid = quantum_grid_search(obj, settings.grid_step,
                                                          settings.parallel);
        evals += grid.evaluations;
        candidates.push_back(grid.best);
    }
    candidates.push_back(canonical_chsh_strategy());
    const OptimizationOutcome classical = classical_optimum(table, prior);
    evals += classical.evaluations;
    candidates.push_back(embed_deterministic(*classical.deterministic_witness));
    for (const auto& seed : settings.seeds) candidates.push_back(seed);

    bool have_best = false;
    QuantumStrategy best{};
    double best_value = 0.0;
    for (const auto& candidate : candidates) {
        const QuantumStrategy refined = refine_strategy(obj, candidate, settings.grid_step,
                                                        settings.refine_step_tol, &evals);
        const double v = obj.eval(moments_of(refined));
        if (!have_best || v > best_value) {
            have_best = true;
            best_value = v;
            best = refined;
        }
    }

    const Behavior witness = behavior_from_quantum(best);
    return OptimizationOutcome{StrategyClass::Quantum,
                               earnings(table, prior, witness),
                               witness,
                               chsh_value(witness),
                               std::nullopt,
                               best,
                               evals};
}

double tsirelson_cap(const VrpParams& p) {
    require_valid(p);
    return closed_form_base(p) + closed_form_coeff(p) * (2.0 * std::numbers::sqrt2) / 8.0;
}

std::optional<TiltedStrategy> matched_tilted_strategy(const VrpParams& p, double zeta) {
    require_valid(p);
    if (zeta < 0.0) throw DomainError("zeta must be nonnegative");
    const double effective = 2.0 * zeta / closed_form_coeff(p);
    if (effective == 0.0) return tilted_optimal_strategy(kPi / 4.0);
    if (effective >= 2.0) return std::nullopt;
    // Invert zeta = 2/sqrt(1 + 2 tan^2(2 theta)).
    const double tan2t = std::sqrt(4.0 - effective * effective) / (effective * std::numbers::sqrt2);
    const double theta = 0.5 * std::atan(tan2t);
    return tilted_optimal_strategy(theta);
}

QuantumSearchSettings scan_search_settings() {
    QuantumSearchSettings settings;
    settings.use_grid = false;
    return settings;
}

ScanResult advantage_scan(const RegionSpec& region, const QuantumSearchSettings& settings,
                          bool parallel) {
    struct Point {
        VrpParams params;
        double zeta;
    };
    std::vector<Point> points;
    std::size_t invalid = 0;
    for (const double s : region.s) {
        for (const double l : region.l) {
            for (const double u_s : region.u_s) {
                for (const double u_l : region.u_l) {
                    for (const double x : region.x) {
                        for (const double y : region.y) {
                            const VrpParams p{s, l, u_s, u_l, x, y};
                            if (!validate_params(p).valid) {
                                invalid += region.zeta.size();
                                continue;
                            }
                            for (const double zeta : region.zeta) {
                                points.push_back({p, zeta});
                            }
                        }
                    }
                }
            }
        }
    }
    if (points.empty()) throw EmptyRegion("no feasible grid point in the scan region");

    ScanResult result;
    result.invalid_points = invalid;
    result.rows.resize(points.size(),
                       ScanRow{VrpParams{}, 0.0, 0.0, 0.0, 0.0, 0.0});

    auto compute_row = [&](std::size_t i) {
        const Point& pt = points[i];
        const PayoffTable table = pt.zeta > 0.0
                                      ? build_tilted_payoff_table({pt.params, pt.zeta})
                                      : build_payoff_table(pt.params);
        const TypePrior prior;
        const double classical = classical_optimum(table, prior).value;
        const double ns = ns_optimum(table, prior).value;

        QuantumSearchSettings row_settings = settings;
        if (const auto matched = matched_tilted_strategy(pt.params, pt.zeta)) {
            row_settings.seeds.push_back(matched->strategy);
        }
        const double quantum = quantum_optimum(table, prior, row_settings).value;
        result.rows[i] = ScanRow{pt.params, pt.zeta, classical, quantum, ns,
                                 quantum - classical};
    };

    if (parallel) {
        const int workers = worker_count();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(workers)
#endif
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(points.size()); ++i) {
            compute_row(static_cast<std::size_t>(i));
        }
        (void)workers;
    } else {
        for (std::size_t i = 0; i < points.size(); ++i) compute_row(i);
    }
    return result;
}

void write_scan_csv(const ScanResult& result, std::ostream& out) {
    out << "s,l,u_s,u_l,x,y,zeta,classical,quantum,ns,advantage\n";
    char buf[256];
    for (const auto& row : result.rows) {
        std::snprintf(buf, sizeof(buf),
                      "%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n",
                      row.params.s, row.params.l, row.params.u_s, row.params.u_l, row.params.x,
                      row.params.y, row.zeta, row.classical, row.quantum, row.ns, row.advantage);
        out << buf;
    }
}

} // namespace nlvrp
