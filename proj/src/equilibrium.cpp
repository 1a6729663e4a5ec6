#include "ceq/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace ceq {

using numerics::Grading;

ArrivalPattern::ArrivalPattern(Scenario scenario, std::vector<PatternPiece> pieces)
    : scenario_(std::move(scenario)), pieces_(std::move(pieces))
{
    if (pieces_.empty()) {
        t0_ = t1_ = scenario_.t_star;
        return;
    }
    t0_ = pieces_.front().t_lo;
    t1_ = pieces_.back().t_hi;
}

ArrivalPattern ArrivalPattern::empty_at(Scenario scenario)
{
    return ArrivalPattern(std::move(scenario), {});
}

const PatternPiece* ArrivalPattern::piece_at(double t) const
{
    if (pieces_.empty() || t < t0_ || t > t1_)
        return nullptr;
    for (const PatternPiece& p : pieces_)
        if (t <= p.t_hi)
            return &p;
    return &pieces_.back();
}

double ArrivalPattern::delay_on(const PatternPiece& p, double t) const
{
    // Zero-delay ends are exact by construction; rounding may leave a tiny
    // negative residual there.
    return p.map.inverse(std::max(0.0, p.level - schedule_delay(t, scenario_)));
}

double ArrivalPattern::delay_at(double t) const
{
    const PatternPiece* p = piece_at(t);
    return p ? delay_on(*p, t) : 0.0;
}

double ArrivalPattern::flow_at(double t) const
{
    return flow_from_delay(delay_at(t), scenario_);
}

double ArrivalPattern::population(std::optional<VehicleClass> cls) const
{
    return integrate([](double, double, const PatternPiece&) { return 1.0; }, cls);
}

ArrivalPattern isocost_pattern(const Scenario& s, VehicleClass cls, const QuadraticMap& map, double level)
{
    if (!(level > 0.0))
        return ArrivalPattern::empty_at(s);
    const double t0 = s.t_star - level / s.beta;
    const double t1 = s.t_star + level / s.gamma;
    std::vector<PatternPiece> pieces{
        {cls, t0, s.t_star, map, level, Grading::at_lo},
        {cls, s.t_star, t1, map, level, Grading::at_hi},
    };
    return ArrivalPattern(s, std::move(pieces));
}

double solve_isocost_level(const Scenario& s, VehicleClass cls, const QuadraticMap& map, double population)
{
    if (!(population > 0.0))
        return 0.0;
    auto excess = [&](double level) { return isocost_pattern(s, cls, map, level).population() - population; };
    // Start from the cost of a six-minute delay; the bracket only doubles.
    const double start = map.value(0.1);
    double lo = 0.0;
    const double hi = numerics::bracket_upward(
        [&](double c) {
            const double v = excess(c);
            if (v < 0.0)
                lo = c;
            return v;
        },
        start);
    return numerics::find_root(excess, lo, hi, s.numerics.root_tol);
}

const ClassOutcome* EquilibriumSolution::outcome(VehicleClass c) const
{
    for (const ClassOutcome& o : classes)
        if (o.vehicle_class == c)
            return &o;
    return nullptr;
}

double EquilibriumSolution::cost(VehicleClass c) const
{
    const ClassOutcome* o = outcome(c);
    return o ? o->equilibrium_cost : 0.0;
}

const EnergyModel& EquilibriumSolution::model_at(double t) const
{
    const Scenario& s = pattern.scenario();
    if (pattern.empty())
        return s.gv;
    const PatternPiece* p = pattern.piece_at(t);
    if (!p)
        p = t < pattern.t0() ? &pattern.pieces().front() : &pattern.pieces().back();
    return s.energy(p->vehicle_class);
}

EquilibriumSolution solve_single_class(const Scenario& s, const EnergyModel& model)
{
    validate(s);
    EquilibriumSolution sol;
    const VehicleClass cls = model.vehicle_class;
    // The class's population is the whole corridor here.
    Scenario own = s;
    if (cls == VehicleClass::electric) {
        own.ev = model;
        own.mpr = 1.0;
    } else {
        own.gv = model;
        own.mpr = 0.0;
    }
    if (!(s.n_total > 0.0)) {
        sol.pattern = ArrivalPattern::empty_at(own);
        sol.classes.push_back({cls, 0.0, 0.0});
        return sol;
    }

    const QuadraticMap map = congestion_map(model, own);
    const double level = solve_isocost_level(own, cls, map, own.n_total);
    sol.pattern = isocost_pattern(own, cls, map, level);
    sol.segments.push_back({cls, sol.pattern.t0(), sol.pattern.t1(), level});
    sol.classes.push_back({cls, level, own.n_total});
    return sol;
}

double boundary_delay(const Scenario& s, double cost_gv, double cost_ev)
{
    const QuadraticMap gv = congestion_map(s.gv, s);
    const QuadraticMap ev = congestion_map(s.energy(VehicleClass::electric), s);
    const double gap = cost_gv - cost_ev;
    auto excess = [&](double T) { return gv.value(T) - ev.value(T) - gap; };
    if (gap == 0.0 && gv.linear == ev.linear && gv.quadratic == ev.quadratic)
        throw SolverError("identical class cost maps: boundary delay is undetermined");
    // Cap the search at the delay where GV congestion alone would exceed its
    // cost: beyond it the boundary cannot lie inside the window.
    const double t_cap = gv.inverse(std::max(cost_gv, 0.0));
    if (excess(0.0) > 0.0 || excess(t_cap) < 0.0) {
        std::ostringstream os;
        os << "no boundary delay in [0, " << t_cap << "] for cost pair (" << cost_gv << ", " << cost_ev
           << "); EV cost map is not flatter than GV";
        throw SolverError(os.str());
    }
    return numerics::find_root(excess, 0.0, t_cap, s.numerics.root_tol * 1e-2);
}

namespace {

ArrivalPattern segmented_pattern(const Scenario& s, double cost_gv, double cost_ev, double sd_boundary)
{
    const QuadraticMap gv = congestion_map(s.gv, s);
    const QuadraticMap ev = congestion_map(s.energy(VehicleClass::electric), s);
    const double t0 = s.t_star - cost_gv / s.beta;
    const double t1 = s.t_star + cost_gv / s.gamma;
    const double a = s.t_star - sd_boundary / s.beta;
    const double b = s.t_star + sd_boundary / s.gamma;
    std::vector<PatternPiece> pieces{
        {VehicleClass::gasoline, t0, a, gv, cost_gv, Grading::at_lo},
        {VehicleClass::electric, a, s.t_star, ev, cost_ev, Grading::none},
        {VehicleClass::electric, s.t_star, b, ev, cost_ev, Grading::none},
        {VehicleClass::gasoline, b, t1, gv, cost_gv, Grading::at_hi},
    };
    return ArrivalPattern(s, std::move(pieces));
}

} // namespace

EquilibriumSolution solve_mixed(const Scenario& s)
{
    validate(s);
    if (s.mpr == 0.0)
        return solve_single_class(s, s.gv);
    if (s.mpr == 1.0)
        return solve_single_class(s, s.energy(VehicleClass::electric));
    if (!(s.n_total > 0.0)) {
        EquilibriumSolution sol;
        sol.pattern = ArrivalPattern::empty_at(s);
        return sol;
    }

    const EnergyModel& evm = s.energy(VehicleClass::electric);
    const QuadraticMap gv = congestion_map(s.gv, s);
    const QuadraticMap ev = congestion_map(evm, s);
    const double n_gv = s.population(VehicleClass::gasoline);
    const double n_ev = s.population(VehicleClass::electric);

    // GV flanks: shifting them apart by the EV segment leaves their mass
    // unchanged, so they carry n_gv exactly when they form a GV tent at some
    // level. The boundary delay is that tent's peak.
    const double gv_tent_level = solve_isocost_level(s, VehicleClass::gasoline, gv, n_gv);
    const double t_b = gv.inverse(gv_tent_level);

    // EV center: the EV isocost curve above the boundary delay.
    const double ev_floor = ev.value(t_b);
    auto ev_mass = [&](double cost_ev) {
        const double sd = cost_ev - ev_floor;
        if (!(sd > 0.0))
            return 0.0;
        return segmented_pattern(s, gv.value(t_b) + sd, cost_ev, sd).population(VehicleClass::electric);
    };
    auto ev_excess = [&](double cost_ev) { return ev_mass(cost_ev) - n_ev; };
    double lo = ev_floor;
    const double step = std::max(ev.value(0.1), 1e-12);
    const double hi = numerics::bracket_upward(
        [&](double d) {
            const double v = ev_excess(ev_floor + d);
            if (v < 0.0)
                lo = ev_floor + d;
            return v;
        },
        step);
    const double cost_ev = numerics::find_root(ev_excess, lo, ev_floor + hi, s.numerics.root_tol);
    const double sd_b = cost_ev - ev_floor;
    const double cost_gv = gv.value(t_b) + sd_b;

    // Re-derive the boundary from the cost pair alone and assemble.
    double t_boundary = t_b;
    if (!(gv.linear == ev.linear && gv.quadratic == ev.quadratic))
        t_boundary = boundary_delay(s, cost_gv, cost_ev);
    const double sd_boundary = cost_gv - gv.value(t_boundary);

    EquilibriumSolution sol;
    sol.pattern = segmented_pattern(s, cost_gv, cost_ev, sd_boundary);
    sol.boundary_delay = t_boundary;
    const auto pieces = sol.pattern.pieces();
    sol.segments = {
        {VehicleClass::gasoline, pieces[0].t_lo, pieces[0].t_hi, cost_gv},
        {VehicleClass::electric, pieces[1].t_lo, pieces[2].t_hi, cost_ev},
        {VehicleClass::gasoline, pieces[3].t_lo, pieces[3].t_hi, cost_gv},
    };
    sol.classes = {{VehicleClass::gasoline, cost_gv, n_gv}, {VehicleClass::electric, cost_ev, n_ev}};

    const double res_gv = sol.pattern.population(VehicleClass::gasoline) - n_gv;
    const double res_ev = sol.pattern.population(VehicleClass::electric) - n_ev;
    const double tol = s.numerics.mixed_tol * s.n_total;
    if (!(std::abs(res_gv) <= tol && std::abs(res_ev) <= tol && sd_boundary > 0.0)) {
        std::ostringstream os;
        os << "mixed equilibrium did not converge: conservation residuals gv=" << res_gv
           << " ev=" << res_ev << " (tolerance " << tol << ")";
        throw SolverError(os.str());
    }
    const double gain = max_deviation_gain(sol);
    if (gain > 1e-9 * cost_gv) {
        std::ostringstream os;
        os << "GV-EV-GV segment topology admits a profitable deviation of " << gain
           << " $; EV congestion cost is not flatter than GV";
        throw SolverError(os.str());
    }
    return sol;
}

double max_deviation_gain(const EquilibriumSolution& sol, int grid_points)
{
    if (sol.empty())
        return 0.0;
    const Scenario& s = sol.pattern.scenario();
    double worst = 0.0;
    const double t0 = sol.t0();
    const double t1 = sol.t1();
    for (const ClassOutcome& o : sol.classes) {
        if (!(o.population > 0.0))
            continue;
        const EnergyModel& m = s.energy(o.vehicle_class);
        for (int i = 0; i < grid_points; ++i) {
            const double t = t0 + (t1 - t0) * static_cast<double>(i) / (grid_points - 1);
            const double c = congestion_cost(m, s, sol.pattern.delay_at(t)) + schedule_delay(t, s);
            worst = std::max(worst, o.equilibrium_cost - c);
        }
    }
    return worst;
}

double TimeProfile::max_delay() const
{
    double m = 0.0;
    for (double d : delay)
        m = std::max(m, d);
    return m;
}

TimeProfile sample_pattern(const ArrivalPattern& pattern, double dt, const std::function<double(double)>& toll)
{
    TimeProfile prof;
    prof.dt = dt;
    const Scenario& s = pattern.scenario();
    const auto k_lo = static_cast<long>(std::floor((pattern.t0() - s.t_star) / dt)) - 2;
    const auto k_hi = static_cast<long>(std::ceil((pattern.t1() - s.t_star) / dt)) + 2;
    const std::size_t n = static_cast<std::size_t>(k_hi - k_lo + 1);
    prof.t.reserve(n);
    for (long k = k_lo; k <= k_hi; ++k) {
        const double t = s.t_star + static_cast<double>(k) * dt;
        const PatternPiece* p = pattern.piece_at(t);
        const double T = p ? pattern.delay_on(*p, t) : 0.0;
        const double f = flow_from_delay(T, s);
        VehicleClass cls = VehicleClass::gasoline;
        if (p)
            cls = p->vehicle_class;
        else if (!pattern.empty())
            cls = (t < pattern.t0() ? pattern.pieces().front() : pattern.pieces().back()).vehicle_class;
        const double tau = (toll && p) ? toll(t) : 0.0;

        prof.t.push_back(t);
        prof.delay.push_back(T);
        prof.flow.push_back(f);
        prof.flow_gv.push_back(cls == VehicleClass::gasoline ? f : 0.0);
        prof.flow_ev.push_back(cls == VehicleClass::electric ? f : 0.0);
        prof.costs.push_back(cost_components(s.energy(cls), s, t, T, tau));
    }
    return prof;
}

TimeProfile sample_profiles(const EquilibriumSolution& sol, double dt)
{
    return sample_pattern(sol.pattern, dt);
}

} // namespace ceq
