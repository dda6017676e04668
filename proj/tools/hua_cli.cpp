// Command-line front end: kernel evaluation, Berezin transforms, the
// verification suites and quadrature convergence tables.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hua/bergman_geometry.hpp"
#include "hua/config.hpp"
#include "hua/errors.hpp"
#include "hua/harness.hpp"
#include "hua/kernels.hpp"
#include "hua/quadrature.hpp"
#include "hua/test_function.hpp"
#include "hua/transforms.hpp"

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string fmt(hua::cplx v) { return fmt(v.real()) + (v.imag() < 0 ? "" : "+") + fmt(v.imag()) + "i"; }

std::vector<int> parse_orders(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size() || v < 2) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw hua::ConfigError("invalid order '" + item + "'");
    }
  }
  if (out.empty()) throw hua::ConfigError("no orders given");
  return out;
}

hua::DomainSpec make_domain(const std::string& kind, int dim) {
  if (kind == "disc") {
    if (dim != 1) throw hua::DimensionMismatch("the disc has dimension 1");
    return hua::DomainSpec::disc();
  }
  return hua::DomainSpec::ball(dim);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hua::ConfigError("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reproducing kernels, Berezin transforms and invariant geometry on the unit ball"};
  app.require_subcommand(1);

  // kernel eval
  auto* kernel = app.add_subcommand("kernel", "kernel evaluation");
  auto* keval = kernel->add_subcommand("eval", "evaluate a kernel at (z, zeta)");
  kernel->require_subcommand(1);
  std::string kname, domain = "ball", zs, zetas;
  int dim = 2;
  keval->add_option("--kernel", kname, "bergman|szego|poisson-szego|poisson-bergman")->required();
  keval->add_option("--domain", domain, "disc|ball")->check(CLI::IsMember({"disc", "ball"}));
  keval->add_option("--dim", dim, "complex dimension")->check(CLI::PositiveNumber);
  keval->add_option("--z", zs, "point \"re,im;re,im\"")->required();
  keval->add_option("--zeta", zetas, "point \"re,im;re,im\"")->required();

  // transform berezin
  auto* transform = app.add_subcommand("transform", "integral transforms");
  auto* tber = transform->add_subcommand("berezin", "Berezin transform of a polynomial");
  transform->require_subcommand(1);
  std::string fspec, tz, torders;
  bool mobius = false;
  tber->add_option("--f", fspec, "polynomial, e.g. \"z1^2*z2 + (1+2i)*w1\"")->required();
  tber->add_option("--z", tz, "point \"re,im;re,im\"")->required();
  tber->add_option("--orders", torders, "radial,slice,angular... (disc: radial,angular)");
  tber->add_flag("--mobius", mobius, "use the Möbius change-of-variables form");

  // verify
  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> suites;
  std::string config_path, json_path, csv_path;
  std::uint64_t seed = 0;
  int jobs = 0;
  bool timings = false;
  auto* seed_opt = verify->add_option("--seed", seed, "override the config seed");
  verify->add_option("--suite", suites, "suite id (repeatable)");
  verify->add_option("--config", config_path, "JSON config merged over the defaults (HUA_CONFIG takes precedence)");
  verify->add_option("--jobs", jobs, "concurrent suites")->check(CLI::PositiveNumber);
  verify->add_option("--json", json_path, "write the JSON report here");
  verify->add_option("--csv", csv_path, "write the CSV projection here");
  verify->add_flag("--timings", timings, "include wall times in the JSON report");

  // table convergence
  auto* table = app.add_subcommand("table", "tables");
  auto* tconv = table->add_subcommand("convergence", "quadrature convergence table (CSV)");
  table->require_subcommand(1);
  std::string integrand, corders = "8,16,32,64", cdomain = "disc";
  int cdim = 1;
  tconv->add_option("--integrand", integrand,
                    "polynomial, or kernel:<bergman|poisson-bergman>:<point>[:<polynomial>] for K(z,.)f")
      ->required();
  tconv->add_option("--orders", corders, "comma-separated orders");
  tconv->add_option("--domain", cdomain, "disc|ball")->check(CLI::IsMember({"disc", "ball"}));
  tconv->add_option("--dim", cdim, "complex dimension")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (keval->parsed()) {
      const auto dom = make_domain(domain, domain == "disc" ? 1 : dim);
      const auto z = hua::parse_point(zs), zeta = hua::parse_point(zetas);
      const auto id = hua::parse_kernel(kname);
      const hua::cplx v = hua::evaluate_kernel(id, dom, z, zeta);
      if (id == hua::KernelId::poisson_szego || id == hua::KernelId::poisson_bergman)
        std::cout << fmt(v.real()) << "\n";
      else
        std::cout << fmt(v) << "\n";
      return 0;
    }

    if (tber->parsed()) {
      const auto z = hua::parse_point(tz);
      const int n = static_cast<int>(z.dim());
      const auto f = hua::TestFunction::parse(fspec, n);
      const auto dom = hua::domain_for(n);
      hua::QuadratureSpec q = hua::QuadratureSpec::defaults_for(dom);
      if (!torders.empty()) {
        const auto o = parse_orders(torders);
        if (n == 1) {
          if (o.size() != 2) throw hua::ConfigError("disc orders are radial,angular");
          q.radial_order = o[0];
          q.angular_points = {o[1]};
        } else if (n == 2) {
          if (o.size() != 4) throw hua::ConfigError("ball orders are radial,slice,angular1,angular2");
          q.radial_order = o[0];
          q.slice_order = o[1];
          q.angular_points = {o[2], o[3]};
        } else {
          q.samples = static_cast<std::size_t>(o[0]);
        }
      }
      hua::TransformOptions opt;
      opt.estimate_error = true;
      const auto r = mobius ? hua::berezin_transform_mobius_form(f, z, q, opt) : hua::berezin_transform(f, z, dom, q, opt);
      std::cout << "value " << fmt(r.value) << "\n";
      std::cout << "error_estimate " << fmt(r.error_estimate) << "\n";
      if (r.escalated) std::cout << "note angular orders doubled near the sphere\n";
      if (r.precision_limited) std::cout << "note precision limited near the sphere\n";
      if (r.nonconvergent) std::cout << "note refinement did not converge\n";
      return r.nonconvergent ? 3 : 0;
    }

    if (verify->parsed()) {
      hua::Config config = hua::resolve_config(config_path.empty() ? std::nullopt : std::optional(config_path));
      if (seed_opt->count() > 0) config.set_seed(seed);
      std::vector<hua::SuiteId> ids;
      for (const auto& s : suites) {
        const auto id = hua::parse_suite(s);
        if (!id) throw hua::ConfigError("unknown suite '" + s + "'");
        ids.push_back(*id);
      }
      const auto summary = hua::run_all(config, ids, jobs);
      for (const auto& r : summary.reports) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.suite;
        if (!r.error.empty()) std::cout << "  error: " << r.error;
        std::cout << "\n";
        for (const auto& c : r.checks)
          if (!c.observation && !c.pass)
            std::cout << "    failed " << c.name << ": " << fmt(c.residual) << (c.lower_bound ? " < " : " > ")
                      << fmt(c.tolerance) << "  [" << c.inputs << "]\n";
      }
      std::cout << summary.passed << " passed, " << summary.failed << " failed\n";
      if (!json_path.empty()) write_file(json_path, hua::summary_json(summary, config, timings));
      if (!csv_path.empty()) write_file(csv_path, hua::summary_csv(summary));
      return summary.all_pass() ? 0 : 1;
    }

    if (tconv->parsed()) {
      const auto orders = parse_orders(corders);
      const auto dom = make_domain(cdomain, cdomain == "disc" ? 1 : cdim);
      const int n = dom.dim();
      hua::Integrand f;
      hua::TestFunction poly(n);
      hua::ComplexVector z;
      hua::KernelId kid = hua::KernelId::bergman;
      bool kernel_form = false;
      if (integrand.rfind("kernel:", 0) == 0) {
        // kernel:<name>:<point>[:<polynomial>]
        const auto rest = integrand.substr(7);
        const auto c1 = rest.find(':');
        if (c1 == std::string::npos) throw hua::ParseError("expected kernel:<name>:<point>[:<polynomial>]");
        kid = hua::parse_kernel(rest.substr(0, c1));
        const auto tail = rest.substr(c1 + 1);
        const auto c2 = tail.find(':');
        z = hua::parse_point(tail.substr(0, c2));
        poly = c2 == std::string::npos ? hua::TestFunction::constant(n, 1.0) : hua::TestFunction::parse(tail.substr(c2 + 1), n);
        kernel_form = true;
      } else {
        poly = hua::TestFunction::parse(integrand, n);
      }
      if (kernel_form) {
        hua::require_in(dom, z, false, "table convergence");
        f = [&](hua::CSpan w) { return hua::evaluate_kernel(kid, dom, z, w) * poly(w); };
      } else {
        f = [&](hua::CSpan w) { return poly(w); };
      }
      const auto t = hua::convergence_table(f, dom, orders);
      std::cout << "order,value_re,value_im,delta\n";
      for (const auto& row : t.rows)
        std::cout << row.order << "," << fmt(row.value.real()) << "," << fmt(row.value.imag()) << "," << fmt(row.delta) << "\n";
      std::cerr << (t.monotone_decay ? "monotone decay\n" : "deltas not monotone\n");
      return 0;
    }
  } catch (const hua::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
