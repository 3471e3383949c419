#pragma once

#include "oamlab/runner.hpp"
#include "oamlab/svg.hpp"

#include <map>

namespace oam
{

namespace detail
{

// |psi|^2 block-averaged to at most `cells` per side, top row = largest y.
inline std::vector<double> intensity_image(const ScalarField& f, int cells, int& side)
{
  const int n = f.grid().n;
  const int block = std::max(1, n / cells);
  side = n / block;
  std::vector<double> img(std::size_t(side) * side, 0.0);
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) img[std::size_t(side - 1 - iy / block) * side + ix / block] += std::norm(f(ix, iy));
  return img;
}

inline std::vector<double> dense_lambdas(double lo, double hi, int count)
{
  return log_spaced(lo, hi, count);
}

} // namespace detail

/// Beam behind three apertures with their OAM spectra and fitted intelligent-state model.
inline void figure1(const RunConfig& c, const fs::path& dir)
{
  constexpr int range = 30;
  const auto& lambdas = c.figures.fig1_lambda;
  const double panel = 260, gap = 80;
  svg::Document doc(gap + lambdas.size() * (panel + gap), 2 * panel + 3 * gap);
  std::string rows = "lambda[1],lambda_fit[1],l[1],P_numeric[1],P_fit[1]\n";
  std::string summary = "lambda[1],lambda_fit[1],sup_error[1],mass[1],delta_phi[rad],delta_l[1],product_gap[1]\n";

  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const AngularApertureSpec ap{lambdas[i], c.aperture_radius, c.aperture_power};
    const auto chk = intelligent_state_check(c.grid(), ap, c.w, c.wavenumber(), range);
    const auto psi = apply_aperture(lg_mode(c.grid(), {0, c.w}, c.wavenumber()), ap).field;
    const double x0 = gap + i * (panel + gap);

    int side = 0;
    const auto img = detail::intensity_image(psi, 128, side);
    svg::Plot map(x0, gap, panel, panel, {-c.half_width, c.half_width, "x / w"},
                  {-c.half_width, c.half_width, "y / w"}, fmt::format("lambda = {:g}", lambdas[i]));
    map.heatmap(img, side, side);
    doc.add(map);

    double pmax = 0.0;
    std::vector<double> ls, pn, pf;
    for (int l = -range; l <= range; ++l) {
      ls.push_back(l);
      pn.push_back(chk.numeric.at(l));
      pf.push_back(chk.fitted.at(l));
      pmax = std::max(pmax, pn.back());
      rows += fmt::format("{},{},{},{},{}\n", lambdas[i], chk.fit.params.lambda_width, l, pn.back(), pf.back());
    }
    const int shown = std::clamp(static_cast<int>(std::ceil(4.0 * delta_l_of_lambda(lambdas[i]))) + 2, 4, range);
    svg::Plot hist(x0, 2 * gap + panel, panel, panel, {-shown - 0.5, shown + 0.5, "l"}, {0.0, 1.1 * pmax, "P(l)"});
    hist.bars(ls, pn, 0.8, svg::palette(0));
    hist.line(ls, pf, svg::palette(1), 1.5);
    hist.markers(ls, pf, svg::palette(1), false, 2.5);
    hist.legend({{{"numerical", svg::palette(0), "bar"},
                  {fmt::format("|g(l)|^2, lambda fit {:.4g}", chk.fit.params.lambda_width), svg::palette(1), "circle"}}});
    doc.add(hist);

    summary += fmt::format("{},{},{},{},{},{},{}\n", lambdas[i], chk.fit.params.lambda_width, chk.sup_error,
                           chk.numeric.total(), chk.uncertainty.delta_phi, chk.uncertainty.delta_l,
                           chk.uncertainty.product_gap);
  }
  write_text(dir / "fig1.svg", doc.str());
  write_text(dir / "fig1.csv", rows);
  write_text(dir / "fig1_summary.csv", summary);
}

/// Overlap against aperture width: simulation symbols over the closed-form curves, with a
/// zoom on the negative minimum for l0 = 1.
inline void figure2(const std::vector<EntanglementResult>& results, const fs::path& dir)
{
  std::map<int, std::vector<const EntanglementResult*>> by_l0;
  double lmin = 1e300, lmax = 0.0;
  for (const auto& r : results) {
    by_l0[r.l0].push_back(&r);
    lmin = std::min(lmin, r.lambda_width);
    lmax = std::max(lmax, r.lambda_width);
  }
  const auto curve_lambdas = detail::dense_lambdas(std::min(lmin, 0.005), std::max(lmax, 500.0), 400);

  svg::Document doc(980, 470);
  svg::Plot main(80, 50, 520, 360, {0.0, 1.9, "Delta phi [rad]"}, {-0.1, 1.02, "b"}, "mutual overlap");
  std::string points = "l0,lambda[1],delta_phi[rad],b_numeric[1],b_analytic[1]\n";
  std::string curves = "l0,lambda[1],delta_phi[rad],b_analytic[1]\n";
  std::vector<std::array<std::string, 3>> legend;
  std::size_t k = 0;
  for (const auto& [l0, rows] : by_l0) {
    std::vector<double> xs, ys;
    for (const auto* r : rows) {
      xs.push_back(r->delta_phi);
      ys.push_back(r->b_numeric);
      points += fmt::format("{},{},{},{},{}\n", l0, r->lambda_width, r->delta_phi, r->b_numeric, r->b_analytic);
    }
    std::vector<double> cx, cy;
    for (double lam : curve_lambdas) {
      cx.push_back(delta_phi_of_lambda(lam));
      cy.push_back(overlap_analytic(lam, l0));
      curves += fmt::format("{},{},{},{}\n", l0, lam, cx.back(), cy.back());
    }
    main.line(cx, cy, svg::palette(k));
    main.markers(xs, ys, svg::palette(k));
    legend.push_back({fmt::format("l0 = {}", l0), svg::palette(k), "circle"});
    ++k;
  }
  main.line({0.0, 1.9}, {0.0, 0.0}, "#888888", 0.8, "3,3");
  main.legend(legend);
  doc.add(main);

  // Zoom: l0 = 1 near the uniform-distribution end.
  const double zx0 = 1.3, zx1 = std::numbers::pi / std::sqrt(3.0) + 0.01;
  svg::Plot zoom(690, 50, 250, 250, {zx0, zx1, "Delta phi [rad]"}, {-0.035, 0.03, "b (l0 = 1)"}, "zoom");
  std::string inset = "lambda[1],delta_phi[rad],b_analytic[1]\n";
  std::vector<double> zx, zy;
  for (double lam : detail::dense_lambdas(0.005, 0.6, 200)) {
    const double x = delta_phi_of_lambda(lam);
    if (x < zx0) continue;
    zx.push_back(x);
    zy.push_back(overlap_analytic(lam, 1));
    inset += fmt::format("{},{},{}\n", lam, x, zy.back());
  }
  zoom.line(zx, zy, svg::palette(0));
  zoom.line({zx0, zx1}, {0.0, 0.0}, "#888888", 0.8, "3,3");
  if (by_l0.count(1)) {
    std::vector<double> xs, ys;
    for (const auto* r : by_l0[1])
      if (r->delta_phi >= zx0) {
        xs.push_back(r->delta_phi);
        ys.push_back(r->b_numeric);
      }
    zoom.markers(xs, ys, svg::palette(0));
  }
  doc.add(zoom);

  write_text(dir / "fig2.svg", doc.str());
  write_text(dir / "fig2.csv", points);
  write_text(dir / "fig2_curves.csv", curves);
  write_text(dir / "fig2_inset.csv", inset);
}

/// OAM spectra of the two diffracted photons for several l0 at one aperture width.
inline void figure3(const RunConfig& c, const fs::path& dir)
{
  const double lam = c.figures.fig3_lambda;
  const auto& l0s = c.figures.fig3_l0;
  const double panel_w = 380, panel_h = 260, gap = 80;
  svg::Document doc(gap + l0s.size() * (panel_w + gap), panel_h + 2 * gap);
  std::string rows = "l0,l[1],P_plus_numeric[1],P_minus_numeric[1],P_plus_model[1],P_minus_model[1]\n";
  const TransmissionMap t(c.grid(), {lam, c.aperture_radius, c.aperture_power});

  for (std::size_t i = 0; i < l0s.size(); ++i) {
    const int l0 = l0s[i];
    const int span = l0 + std::max(8, static_cast<int>(std::ceil(5.0 * delta_l_of_lambda(lam))));
    const auto plus = apply_aperture(lg_mode(c.grid(), {l0, c.w}, c.wavenumber()), t).field;
    const auto minus = apply_aperture(lg_mode(c.grid(), {-l0, c.w}, c.wavenumber()), t).field;
    const double b = inner_product(minus, plus).real();
    const auto sp = oam_spectrum(plus, -span, span);
    const auto sm = oam_spectrum(minus, -span, span);
    const auto mp = intelligent_spectrum({lam, double(l0)}, -span, span);
    const auto mm = intelligent_spectrum({lam, double(-l0)}, -span, span);

    std::vector<double> ls, pp, pm, qp, qm;
    double pmax = 0.0;
    for (int l = -span; l <= span; ++l) {
      ls.push_back(l);
      pp.push_back(sp.at(l));
      pm.push_back(sm.at(l));
      qp.push_back(mp.at(l));
      qm.push_back(mm.at(l));
      pmax = std::max({pmax, pp.back(), pm.back()});
      rows += fmt::format("{},{},{},{},{},{}\n", l0, l, pp.back(), pm.back(), qp.back(), qm.back());
    }
    svg::Plot p(gap + i * (panel_w + gap), gap, panel_w, panel_h, {-span - 0.5, span + 0.5, "l"},
                {0.0, 1.15 * pmax, "P(l)"}, fmt::format("l0 = {}, lambda = {:g}, b = {:.4f}", l0, lam, b));
    p.bars(ls, pp, 0.8, svg::palette(0), 0.6);
    p.bars(ls, pm, 0.8, svg::palette(1), 0.6);
    p.line(ls, qp, svg::palette(0), 1.2, "4,2");
    p.line(ls, qm, svg::palette(1), 1.2, "4,2");
    p.legend({{{fmt::format("+{} numerical", l0), svg::palette(0), "bar"},
               {fmt::format("-{} numerical", l0), svg::palette(1), "bar"},
               {"|g(l)|^2", "#444444", "dash"}}});
    doc.add(p);
  }
  write_text(dir / "fig3.svg", doc.str());
  write_text(dir / "fig3.csv", rows);
}

/// Overlap and concurrence against l0 * delta phi with the universal curves.
inline void figure4(const std::vector<EntanglementResult>& results, const fs::path& dir)
{
  std::map<int, std::vector<const EntanglementResult*>> by_l0;
  double xmax = 0.0;
  for (const auto& r : results) {
    by_l0[r.l0].push_back(&r);
    xmax = std::max(xmax, r.l0 * r.delta_phi);
  }
  xmax = std::min(std::max(xmax, 1.0), 2.5);

  svg::Document doc(1000, 440);
  svg::Plot pb(80, 50, 380, 300, {0.0, xmax, "l0 Delta phi [rad]"}, {-0.05, 1.02, "b"}, "overlap");
  svg::Plot pc(580, 50, 380, 300, {0.0, xmax, "l0 Delta phi [rad]"}, {0.0, 1.02, "C"}, "concurrence");
  std::string rows = "l0,lambda[1],x[rad],b_numeric[1],C_numeric[1],b_universal[1],C_universal[1]\n";
  std::vector<std::array<std::string, 3>> legend;
  std::size_t k = 0;
  for (const auto& [l0, rs] : by_l0) {
    std::vector<double> xs, bs, cs;
    for (const auto* r : rs) {
      const double x = l0 * r->delta_phi;
      xs.push_back(x);
      bs.push_back(r->b_numeric);
      cs.push_back(r->concurrence);
      rows += fmt::format("{},{},{},{},{},{},{}\n", l0, r->lambda_width, x, r->b_numeric, r->concurrence,
                          std::exp(-2.0 * x * x), std::tanh(2.0 * x * x));
    }
    pb.markers(xs, bs, svg::palette(k), k % 2 == 1);
    pc.markers(xs, cs, svg::palette(k), k % 2 == 1);
    legend.push_back({fmt::format("l0 = {}", l0), svg::palette(k), k % 2 == 1 ? "square" : "circle"});
    ++k;
  }
  std::string curves = "x[rad],b_universal[1],C_universal[1]\n";
  std::vector<double> ux, ub, uc;
  for (int i = 0; i <= 300; ++i) {
    const double x = xmax * i / 300.0;
    ux.push_back(x);
    ub.push_back(std::exp(-2.0 * x * x));
    uc.push_back(std::tanh(2.0 * x * x));
    curves += fmt::format("{},{},{}\n", x, ub.back(), uc.back());
  }
  pb.line(ux, ub, "black", 1.2);
  pc.line(ux, uc, "black", 1.2);
  legend.push_back({"universal", "black", "line"});
  pc.legend(legend, true);
  doc.add(pb);
  doc.add(pc);
  write_text(dir / "fig4.svg", doc.str());
  write_text(dir / "fig4.csv", rows);
  write_text(dir / "fig4_curves.csv", curves);
}

/// Writes every enabled figure. Figures 2 and 4 are drawn from sweep results.
inline void write_figures(const RunConfig& c, const std::vector<EntanglementResult>& results, const fs::path& dir)
{
  ensure_directory(dir);
  if (c.figures.fig1) figure1(c, dir);
  if (c.figures.fig2) figure2(results, dir);
  if (c.figures.fig3) figure3(c, dir);
  if (c.figures.fig4) figure4(results, dir);
}

} // namespace oam
