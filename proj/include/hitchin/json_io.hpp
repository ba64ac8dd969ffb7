#ifndef HITCHIN_JSON_IO_HPP
#define HITCHIN_JSON_IO_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "hitchin/adjoint.hpp"
#include "hitchin/common.hpp"
#include "hitchin/cubic.hpp"
#include "hitchin/errors.hpp"
#include "hitchin/harness.hpp"
#include "hitchin/periods.hpp"
#include "hitchin/rootsys.hpp"
#include "hitchin/spectral.hpp"

namespace hitchin::json_io {

using nlohmann::json;

inline json to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

inline cplx cplx_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InvalidInput("expected a complex number as [re, im]");
    return cplx(j[0].get<double>(), j[1].get<double>());
}

inline json to_json(const CMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

// Curve spec: {"divisor": [{"q": [re,im], "n": int}, ...], "b_coeffs": [[re,im], ...]}
struct CurveSpec {
    spectral::Divisor divisor;
    Poly b_coeffs;
};

inline CurveSpec curve_spec_from_json(const json& j) {
    if (!j.contains("divisor") || !j.contains("b_coeffs"))
        throw InvalidInput("curve spec needs 'divisor' and 'b_coeffs'");
    std::vector<cplx> q;
    std::vector<int> n;
    for (const auto& item : j.at("divisor")) {
        q.push_back(cplx_from_json(item.at("q")));
        n.push_back(item.value("n", 1));
    }
    std::vector<cplx> c;
    for (const auto& item : j.at("b_coeffs")) c.push_back(cplx_from_json(item));
    return CurveSpec{spectral::Divisor(q, n), Poly(c)};
}

inline harness::VerificationConfig config_from_json(const json& j) {
    CurveSpec spec = curve_spec_from_json(j);
    harness::VerificationConfig cfg(spec.divisor, spec.b_coeffs);
    cfg.fd_step = j.value("fd_step", cfg.fd_step);
    cfg.quad_tol = j.value("quad_tol", cfg.quad_tol);
    cfg.sym_tol = j.value("sym_tol", cfg.sym_tol);
    cfg.spread_tol = j.value("spread_tol", cfg.spread_tol);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.base_points = j.value("base_points", cfg.base_points);
    cfg.richardson = j.value("richardson", cfg.richardson);
    if (j.contains("directions"))
        cfg.directions = j.at("directions").get<std::vector<int>>();
    return cfg;
}

inline json lie_check_report(const rootsys::CartanType& t) {
    auto rs = rootsys::build_root_system(t);
    auto w = rootsys::generate_weyl(rs);
    auto ed = rootsys::exponent_data(t);

    long prod_d = 1;
    int sum_m = 0, sum_2m1 = 0;
    for (int d : ed.degrees) prod_d *= d;
    for (int m : ed.exponents) { sum_m += m; sum_2m1 += 2 * m + 1; }

    json rep;
    rep["type"] = t.name();
    rep["num_roots"] = rs.roots.size();
    rep["num_positive_roots"] = rs.positive_roots.size();
    rep["weyl_order"] = w.order();
    rep["degrees"] = ed.degrees;
    rep["exponents"] = ed.exponents;
    rep["dim_g"] = t.dim_g();
    rep["identities"] = {
        {"prod_d_eq_W", prod_d == long(w.order())},
        {"sum_m_eq_num_pos_roots", sum_m == int(rs.positive_roots.size())},
        {"sum_2m_plus_1_eq_dim_g", sum_2m1 == t.dim_g()},
        {"num_roots_eq_dim_minus_rank", int(rs.roots.size()) == t.dim_g() - t.rank},
    };
    return rep;
}

inline json discriminant_report_json(const adjoint::DiscriminantReport& r) {
    json rep;
    json pts = json::array();
    for (const auto& v : r.sample_points) {
        json p = json::array();
        for (const auto& z : v) p.push_back(to_json(z));
        pts.push_back(p);
    }
    rep["sample_points"] = pts;
    json jv = json::array(), pp = json::array(), fp = json::array();
    for (const auto& z : r.jacobian_values) jv.push_back(to_json(z));
    for (const auto& z : r.pos_root_products) pp.push_back(to_json(z));
    for (const auto& z : r.full_root_products) fp.push_back(to_json(z));
    rep["jacobian_values"] = jv;
    rep["pos_root_products"] = pp;
    rep["full_root_products"] = fp;
    rep["ratio_mean"] = to_json(r.ratio_mean);
    rep["ratio_spread"] = r.ratio_spread;
    rep["pass"] = r.pass;
    rep["full_root_degree_consistent"] = r.full_root_degree_consistent;
    return rep;
}

inline json curve_info_report(const CurveSpec& spec) {
    auto curve = spectral::make_curve(spec.divisor, spec.b_coeffs);
    json rep;
    rep["genus"] = curve.genus;
    rep["deg_L"] = curve.frame.d;
    json bp = json::array();
    for (const auto& e : curve.branch_points) bp.push_back(to_json(e));
    rep["branch_points"] = bp;
    rep["generic"] = true;
    return rep;
}

inline json cubic_tensor_json(const cubic::CubicTensor& c) {
    json out = json::array();
    for (int i = 0; i < c.dim; ++i) {
        json plane = json::array();
        for (int j = 0; j < c.dim; ++j) {
            json row = json::array();
            for (int k = 0; k < c.dim; ++k) row.push_back(to_json(c.at(i, j, k)));
            plane.push_back(row);
        }
        out.push_back(plane);
    }
    return out;
}

inline json cubic_report(const CurveSpec& spec, const std::string& form) {
    auto curve = spectral::make_curve(spec.divisor, spec.b_coeffs);
    auto basis = spectral::leaf_basis(spec.divisor);
    auto ca = cubic::cubic_disc_log(curve, spec.divisor, basis);
    auto cb = cubic::cubic_root_sum(curve, spec.divisor, basis);
    const auto& shown = (form == "A") ? ca : cb;
    json rep;
    rep["basis"] = "leaf monomials 1, z, ..., z^(d-2)";
    rep["form"] = form;
    rep["entries"] = cubic_tensor_json(shown);
    rep["symmetry_residual"] = shown.symmetry_residual();
    rep["AB_residual"] = cubic::ab_residual(ca, cb);
    return rep;
}

inline json periods_report(const CurveSpec& spec) {
    auto curve = spectral::make_curve(spec.divisor, spec.b_coeffs);
    auto pd = periods::period_matrix(curve);
    json rep;
    rep["A"] = to_json(pd.A);
    rep["B"] = to_json(pd.B);
    rep["Z"] = to_json(pd.Z);
    rep["cond_A"] = pd.cond_A;
    rep["sym_residual"] = pd.sym_residual;
    rep["min_imag_eig"] = pd.min_im_eig;
    return rep;
}

inline json kappa_report_json(const harness::KappaReport& r) {
    json rep;
    rep["genus"] = r.genus;
    rep["kappa_mean"] = to_json(r.kappa_mean);
    rep["spread"] = r.relative_spread;
    json entries = json::array();
    for (size_t i = 0; i < r.kappa_entries.size(); ++i)
        if (r.participates[i]) entries.push_back(to_json(r.kappa_entries[i]));
    rep["entries"] = entries;
    rep["entries_skipped"] = r.entries_skipped;
    rep["stages"] = {
        {"periods",
         {{"cond_A", r.stages.periods_cond_A},
          {"sym_residual", r.stages.periods_sym_residual},
          {"min_imag_eig", r.stages.periods_min_im_eig}}},
        {"cubic",
         {{"AB_residual", r.stages.cubic_ab_residual},
          {"symmetry_residual", r.stages.cubic_sym_residual}}},
        {"fd",
         {{"dZ_sym_residual", r.stages.fd_sym_residual},
          {"transported_sym_residual", r.stages.transported_sym_residual}}},
    };
    if (r.base_point_means.size() > 1) {
        json means = json::array();
        for (const auto& m : r.base_point_means) means.push_back(to_json(m));
        rep["base_point_means"] = means;
        rep["cross_base_spread"] = r.cross_base_spread;
    }
    rep["pass"] = r.pass;
    return rep;
}

}  // namespace hitchin::json_io

#endif
