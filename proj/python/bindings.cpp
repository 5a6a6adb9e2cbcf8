#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <optional>

#include "qglab/qglab.hpp"

namespace py = pybind11;
using namespace qglab;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// arr[j, i] is the value at (x1_i, x2_j), the same row-major layout as PhysicalField.
PhysicalField to_physical(const Array& a) {
    if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw ValidationError("expected a square 2-d array");
    const Grid g(int(a.shape(0)));
    std::vector<double> v(a.data(), a.data() + a.size());
    return PhysicalField(g, std::move(v));
}

SpectralField to_spectral(const Array& a) { return forward_transform(to_physical(a)); }

Array to_array(const PhysicalField& f) {
    const auto n = py::ssize_t(f.n());
    Array out({n, n});
    std::copy(f.values().begin(), f.values().end(), out.mutable_data());
    return out;
}

Array to_array(const SpectralField& f) { return to_array(inverse_transform(f)); }

ModelParams make_params(const std::string& model, double alpha, double kappa, double mu) {
    ModelParams p;
    p.model = model_from_string(model);
    p.alpha = alpha;
    p.kappa = kappa;
    p.mu = mu;
    p.validate();
    return p;
}

py::dict record_dict(const NormRecord& r) {
    py::dict d;
    d["t"] = r.t;
    d["l2"] = r.lp.l2;
    d["l3"] = r.lp.l3;
    d["l4"] = r.lp.l4;
    d["linf"] = r.lp.linf;
    d["hs"] = r.hs.at(r.s_index);
    d["h1"] = r.hs.at(1.0);
    d["energy"] = r.energy;
    d["mod_energy"] = r.mod_energy;
    d["diss_integral"] = r.diss_integral;
    d["balance_residual"] = r.balance_residual;
    d["q_inf"] = r.q_inf;
    d["ladder"] = r.ladder;
    return d;
}

py::dict certificate_dict(const PicardCertificate& c) {
    py::dict d;
    d["R"] = c.R;
    d["T"] = c.T;
    d["iterations"] = c.iterations;
    d["ratios"] = c.ratios;
    d["max_ratio"] = c.max_ratio();
    d["converged"] = c.converged;
    d["nodes"] = c.nodes;
    d["refinements"] = c.refinements;
    return d;
}

}  // namespace

PYBIND11_MODULE(_qglab, m) {
    m.doc() = "Pseudo-spectral QG laboratory (compiled core)";

    static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
    static py::exception<ValidationError> validation(m, "ValidationError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ValidationError& e) {
            py::set_error(validation, e.what());
        } catch (const TimedError& e) {
            PyErr_SetObject(error.ptr(), py::make_tuple(e.what(), e.time()).ptr());
        } catch (const Error& e) {
            py::set_error(error, e.what());
        }
    });

    m.def("cmt_datum", [](int n) { return to_array(cmt_datum(Grid(n))); }, py::arg("n"));
    m.def(
        "single_mode", [](int n, int k1, int k2) { return to_array(single_mode(Grid(n), k1, k2)); }, py::arg("n"),
        py::arg("k1"), py::arg("k2"));
    m.def(
        "random_shell_field",
        [](int n, double kmax, double gamma, std::uint64_t seed) {
            return to_array(random_shell_field(Grid(n), kmax, gamma, seed));
        },
        py::arg("n"), py::arg("kmax"), py::arg("gamma"), py::arg("seed") = 0);

    m.def("apply_lambda", [](const Array& a, double beta) { return to_array(apply_lambda(to_spectral(a), beta)); },
          py::arg("theta"), py::arg("beta"));
    m.def(
        "riesz_velocity",
        [](const Array& a) {
            const Velocity v = riesz_velocity(to_spectral(a));
            return py::make_tuple(to_array(v.u1), to_array(v.u2));
        },
        py::arg("theta"));
    m.def(
        "mollify",
        [](const Array& a, double eps, const std::string& profile) {
            return to_array(mollify(to_spectral(a), {mollifier_profile_from_string(profile), eps}));
        },
        py::arg("theta"), py::arg("eps"), py::arg("profile") = "gaussian");
    m.def(
        "rhs",
        [](const Array& a, const std::string& model, double alpha, double kappa, double mu) {
            return to_array(rhs(to_spectral(a), make_params(model, alpha, kappa, mu)));
        },
        py::arg("theta"), py::arg("model") = "inviscid", py::arg("alpha") = 0.5, py::arg("kappa") = 0.0,
        py::arg("mu") = 0.0);

    m.def("lp_norm", [](const Array& a, double q) { return lp_norm(to_physical(a), q); }, py::arg("theta"),
          py::arg("q"));
    m.def("sobolev_norm", [](const Array& a, double s) { return sobolev_norm(to_spectral(a), s); }, py::arg("theta"),
          py::arg("s"));
    m.def("besov_norm", [](const Array& a, double s) { return besov_norm(to_spectral(a), s); }, py::arg("theta"),
          py::arg("s"));
    m.def("log_bound_ratio", [](const Array& a, double sigma) { return log_bound_ratio(to_spectral(a), sigma); },
          py::arg("theta"), py::arg("sigma") = 2.0);

    m.def(
        "simulate",
        [](const Array& theta0, const std::string& model, double alpha, double kappa, double mu, double dt,
           double t_end, const std::string& scheme, int diag_every, bool dealias) {
            const ModelParams p = make_params(model, alpha, kappa, mu);
            StepperConfig c;
            c.dt = dt;
            c.t_end = t_end;
            c.scheme = scheme_from_string(scheme);
            c.diag_every = diag_every;
            c.dealias = dealias;
            const SpectralField th = to_spectral(theta0);
            std::optional<RunResult> res;
            {
                py::gil_scoped_release release;
                res.emplace(run(th, p, c));
            }
            const RunResult& r = *res;
            py::list recs;
            for (const auto& rec : r.records) recs.append(record_dict(rec));
            py::dict out;
            out["records"] = recs;
            out["final"] = to_array(r.final_state);
            out["cfl_estimate"] = r.cfl_estimate;
            return out;
        },
        py::arg("theta0"), py::arg("model") = "inviscid", py::arg("alpha") = 0.5, py::arg("kappa") = 0.0,
        py::arg("mu") = 0.0, py::arg("dt") = 1e-3, py::arg("t_end") = 1.0, py::arg("scheme") = "etd-rk4",
        py::arg("diag_every") = 10, py::arg("dealias") = true);

    m.def(
        "picard",
        [](const Array& theta0, double mu, double alpha, double s, double tol, int nodes, double horizon) {
            const ModelParams p = ModelParams::regularized(mu, alpha);
            PicardOptions o;
            o.s = s;
            o.tol = tol;
            o.nodes = nodes;
            PicardResult r = picard_solve(to_spectral(theta0), p, o, horizon);
            py::dict out = certificate_dict(r.certificate);
            out["times"] = r.times;
            out["final"] = to_array(r.states.back());
            return out;
        },
        py::arg("theta0"), py::arg("mu"), py::arg("alpha") = 0.5, py::arg("s") = 2.0, py::arg("tol") = 1e-10,
        py::arg("nodes") = 33, py::arg("horizon") = 0.0);

    m.def(
        "dr_flux",
        [](const Array& theta, double eps, const std::string& g, const std::string& profile, bool decomposition) {
            FluxOptions o;
            o.profile = mollifier_profile_from_string(profile);
            o.decomposition = decomposition;
            const FluxEstimate e = dr_flux(to_spectral(theta), eps, ConvexG{convex_from_string(g)}, o);
            py::dict d;
            d["eps"] = e.eps;
            d["sigma_l1"] = e.sigma_l1;
            d["r_l32"] = e.r_l32;
            d["flux_integral"] = e.flux_integral;
            d["dr_integral"] = e.dr_integral;
            d["decomposition_defect"] = e.decomposition_defect;
            return d;
        },
        py::arg("theta"), py::arg("eps"), py::arg("g") = "half-square", py::arg("profile") = "gaussian",
        py::arg("decomposition") = true);

    m.def(
        "compare_mu",
        [](const Array& theta0, double alpha, const std::vector<double>& mu_list, double dt, double t_end,
           int diag_every) {
            MuSweepConfig c;
            c.dt = dt;
            c.t_end = t_end;
            c.diag_every = diag_every;
            MuSweepResult r;
            const SpectralField th = to_spectral(theta0);
            {
                py::gil_scoped_release release;
                r = compare_mu(th, alpha, mu_list, c);
            }
            py::dict d;
            d["mu"] = r.mu_list;
            d["l2_errors"] = r.l2_errors;
            d["energy_errors"] = r.energy_errors;
            d["slope_l2"] = r.slope_l2;
            d["slope_energy"] = r.slope_energy;
            d["monotone"] = r.monotone;
            d["reference_self_error"] = r.reference_self_error;
            return d;
        },
        py::arg("theta0"), py::arg("alpha"), py::arg("mu_list"), py::arg("dt") = 1e-3, py::arg("t_end") = 1.0,
        py::arg("diag_every") = 10);

    m.def(
        "log_bound_check",
        [](int trials, double sigma, int mode_cap, std::uint64_t seed) {
            const LogBoundResult r = log_bound_check(trials, sigma, mode_cap, seed);
            py::dict d;
            d["max_ratio"] = r.max_ratio;
            d["mean_ratio"] = r.mean_ratio;
            d["trials"] = r.trials;
            d["grid_n"] = r.grid_n;
            return d;
        },
        py::arg("trials") = 1000, py::arg("sigma") = 2.0, py::arg("mode_cap") = 32, py::arg("seed") = 0);
    m.def(
        "gn_sweep",
        [](int trials, double s, double alpha, double beta, std::uint64_t seed) {
            return gn_sweep(trials, s, alpha, beta, seed).max_relative_residual;
        },
        py::arg("trials") = 1000, py::arg("s") = 0.5, py::arg("alpha") = 1.0, py::arg("beta") = 0.5,
        py::arg("seed") = 0);

    m.def(
        "save_snapshot",
        [](const std::string& path, const Array& theta, double t, const std::string& model, double alpha,
           double kappa, double mu) {
            save_snapshot(path, Snapshot{t, model_from_string(model), alpha, kappa, mu, to_physical(theta)});
        },
        py::arg("path"), py::arg("theta"), py::arg("t") = 0.0, py::arg("model") = "inviscid", py::arg("alpha") = 0.5,
        py::arg("kappa") = 0.0, py::arg("mu") = 0.0);
    m.def(
        "load_snapshot",
        [](const std::string& path) {
            const Snapshot s = load_snapshot(path);
            py::dict d;
            d["t"] = s.t;
            d["model"] = std::string(to_string(s.model));
            d["alpha"] = s.alpha;
            d["kappa"] = s.kappa;
            d["mu"] = s.mu;
            d["theta"] = to_array(s.theta);
            return d;
        },
        py::arg("path"));
}
