#include "cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "cache.hpp"
#include "macpoly/affine.hpp"
#include "macpoly/elliptic.hpp"
#include "macpoly/errors.hpp"
#include "macpoly/jacobi.hpp"
#include "macpoly/kz.hpp"
#include "macpoly/macdonald.hpp"
#include "macpoly/serialize.hpp"

#ifndef MACPOLY_VERSION
#define MACPOLY_VERSION "dev"
#endif

namespace macpoly::cli {

namespace {

using nlohmann::json;

const char* kVersionTag = "macpoly-" MACPOLY_VERSION;

// ---------- parsing helpers

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int x = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      v.push_back(x);
    } catch (const std::exception&) {
      fail(ErrorKind::InvalidInput, "not an integer list: '" + text + "'");
    }
  }
  if (v.empty()) fail(ErrorKind::InvalidInput, "empty integer list");
  return v;
}

Partition parse_partition(const std::string& text, int n) {
  Partition p = parse_int_list(text);
  if (static_cast<int>(p.size()) > n) fail(ErrorKind::InvalidInput, "'" + text + "' has more than n parts");
  p.resize(n, 0);
  return p;
}

cplx parse_complex(std::string s) {
  std::erase(s, ' ');
  if (s.empty()) fail(ErrorKind::InvalidInput, "empty complex number");
  auto num = [&](const std::string& t, bool imag) -> double {
    if (imag && (t.empty() || t == "+")) return 1.0;
    if (imag && t == "-") return -1.0;
    try {
      std::size_t used = 0;
      const double v = std::stod(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      fail(ErrorKind::InvalidInput, "not a complex number: '" + s + "'");
    }
  };
  if (s.back() != 'i' && s.back() != 'j') return {num(s, false), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;)
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  if (split == std::string::npos) return {0.0, num(body, true)};
  return {num(body.substr(0, split), false), num(body.substr(split), true)};
}

JacobiK parse_k(const std::optional<std::string>& k) {
  if (!k) return JacobiK::symbolic();
  try {
    return jacobi_k_from_text(*k);
  } catch (const Error&) {
    fail(ErrorKind::InvalidInput, "k must be 'formal' or a rational number");
  }
}

int parse_int_k(const std::optional<std::string>& k, const char* what) {
  if (!k) fail(ErrorKind::InvalidInput, std::string(what) + " needs --k");
  const auto v = parse_int_list(*k);
  if (v.size() != 1 || v[0] < 0) fail(ErrorKind::InvalidInput, "k must be a nonnegative integer");
  return v[0];
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

// ---------- execution helpers

template <class T>
std::vector<T> parallel_map(int jobs, std::size_t count, const std::function<T(std::size_t)>& f) {
  std::vector<T> out(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr first;
  std::mutex mu;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < count;) {
      try {
        out[i] = f(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!first) first = std::current_exception();
        next = count;
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (first) std::rethrow_exception(first);
  return out;
}

std::optional<std::filesystem::path> cache_dir_of(const RunConfig& cfg) {
  if (cfg.cache_dir) return std::filesystem::path(*cfg.cache_dir);
  if (const char* env = std::getenv("MACPOLY_CACHE"); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

struct Session {
  const RunConfig& cfg;
  ResultCache cache;
  std::ostream& err;
  Session(const RunConfig& c, std::ostream& e) : cfg(c), cache(cache_dir_of(c)), err(e) {}
  ~Session() {
    if (cfg.stats) err << json{{"stats", cache.stats().to_json()}}.dump() << "\n";
  }
  json cached(json key, const std::function<json()>& compute) {
    key["version"] = kVersionTag;
    return json::parse(cache.get_or_compute(key, [&] { return compute().dump(); }));
  }
};

RootData root_data(const RunConfig& cfg) {
  if (cfg.n < 2) fail(ErrorKind::InvalidInput, "--n must be at least 2");
  if (cfg.n > 12) fail(ErrorKind::InvalidInput, "--n above 12 is not supported");
  return RootData::build_a_type(cfg.n);
}

// ---------- rendering

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string list_text(const json& j) {
  std::string s = "[";
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (i) s += ",";
    s += j[i].is_string() ? j[i].get<std::string>() : j[i].dump();
  }
  return s + "]";
}

std::string fraction_text(const json& t) {
  const std::string num = t.at("num"), den = t.at("den");
  return den == "1" ? num : "(" + num + ")/(" + den + ")";
}

void render_polys(const std::vector<json>& items, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << (items.size() == 1 ? items[0] : json(items)).dump() << "\n";
    return;
  }
  if (format == "csv") out << "lambda,mu,num,den\n";
  for (const auto& P : items) {
    const std::string lam = list_text(P.at("lambda"));
    if (format == "pretty") {
      out << (P.contains("mode") ? "P_" : "J_") << lam;
      if (P.contains("mode")) out << "  mode " << P["mode"].get<std::string>();
      if (P.contains("k")) out << "  k = " << (P["k"].is_string() ? P["k"].get<std::string>() : P["k"].dump());
      out << "\n";
    }
    for (const auto& t : P.at("coeffs")) {
      if (format == "csv")
        out << csv_field(lam) << "," << csv_field(list_text(t.at("mu"))) << "," << csv_field(t.at("num")) << ","
            << csv_field(t.at("den")) << "\n";
      else
        out << "  m_" << list_text(t.at("mu")) << "  " << fraction_text(t) << "\n";
    }
  }
}

void render_affine(const json& s, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << s.dump() << "\n";
    return;
  }
  if (format == "csv") out << "p,weight,num,den\n";
  else
    out << "level " << s.at("K") << ", k = " << s.at("k").get<std::string>() << ", through p^" << s.at("N")
        << ", offset " << s.at("offset").get<std::string>() << "\n";
  for (const auto& layer : s.at("layers"))
    for (const auto& t : layer.at("terms")) {
      if (format == "csv")
        out << layer.at("p") << "," << csv_field(list_text(t.at("weight"))) << "," << csv_field(t.at("num")) << ","
            << csv_field(t.at("den")) << "\n";
      else
        out << "  p^" << layer.at("p") << "  e^" << list_text(t.at("weight")) << "  " << fraction_text(t) << "\n";
    }
}

bool report_passes(const json& r) {
  if (r.contains("equal")) return r["equal"].get<bool>() || r.value("inconclusive", false);
  return r.at("pass").get<bool>();
}

void render_reports(const std::string& suite, const std::vector<json>& reports, const std::string& format,
                    std::ostream& out) {
  long passed = 0, failed = 0, skipped = 0;
  for (const auto& r : reports) {
    if (r.value("inconclusive", false))
      ++skipped;
    else if (report_passes(r))
      ++passed;
    else
      ++failed;
  }
  if (format == "json") {
    out << json{{"suite", suite}, {"pass", failed == 0}, {"passed", passed}, {"failed", failed},
                {"skipped", skipped}, {"reports", reports}}
               .dump()
        << "\n";
    return;
  }
  if (format == "csv") {
    out << "check,inputs,result,residual,tolerance\n";
    for (const auto& r : reports) {
      const bool exact = r.contains("identity");
      const std::string result = r.value("inconclusive", false) ? "skipped" : report_passes(r) ? "pass" : "fail";
      out << csv_field(exact ? r["identity"].get<std::string>() : r["check"].get<std::string>()) << ","
          << csv_field((exact ? r["inputs"] : r["parameters"]).dump()) << "," << result << ","
          << (exact ? "" : r["max_residual"].dump()) << "," << (exact ? "" : r["tolerance"].dump()) << "\n";
    }
    return;
  }
  for (const auto& r : reports) {
    const bool exact = r.contains("identity");
    const std::string tag = r.value("inconclusive", false) ? "SKIP" : report_passes(r) ? "PASS" : "FAIL";
    out << tag << "  " << (exact ? r["identity"].get<std::string>() : r["check"].get<std::string>()) << "  "
        << (exact ? r["inputs"] : r["parameters"]).dump();
    if (!exact) out << "  residual " << r["max_residual"].dump() << " (tol " << r["tolerance"].dump() << ")";
    if (r.contains("note")) out << "  " << r["note"].get<std::string>();
    out << "\n";
  }
  out << suite << ": " << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
}

// ---------- elliptic reports shared by `elliptic --check` and `verify elliptic-all`

std::vector<json> elliptic_reports(const RunConfig& cfg, const std::string& which) {
  std::vector<json> out;
  auto all = which == "all";
  if (all || which == "identities")
    for (const auto& r : check_elliptic_identities(default_elliptic_grid(), cfg.tol.value_or(1e-10)))
      out.push_back(to_json(r));
  if (all || which == "r-matrix")
    for (int n : {2, 3}) {
      const auto s = default_r_samples(n);
      out.push_back(to_json(check_r_unitarity(n, s)));
      out.push_back(to_json(check_r_residue(n, s)));
      out.push_back(to_json(check_r_quasi_periodicity(n, s)));
    }
  if (all || which == "flatness") {
    const std::vector<cplx> h2a = {{0.13, 0.05}, {-0.13, -0.05}}, h2b = {{0.21, -0.04}, {-0.21, 0.04}};
    struct Sample {
      double K;
      cplx tau;
      std::vector<cplx> h;
    };
    const Sample samples[] = {{1.7, {0.0, 1.1}, h2a}, {1.0, {0.1, 0.9}, h2b}};
    for (int points : {2, 3}) {
      std::vector<SlRep> reps = {defining_rep(2), defining_rep(2)};
      std::vector<cplx> z = {cplx(0.1, 0.05), cplx(0.37, -0.1)};
      if (points == 3) {
        reps.push_back(symmetric_power(2, 2));
        z.push_back(cplx(0.7, 0.2));
      }
      const TensorSpace V(2, reps);
      for (const auto& s : samples) {
        const EllipticContext ctx(s.tau);
        const auto f = flatness_check(V, z, s.h, ctx, s.K, cfg.fd_step);
        NumericReport r;
        r.check = "kz-flatness";
        r.parameters = {{"points", points}, {"K", s.K}, {"tau", complex_json(s.tau)}, {"step", cfg.fd_step}};
        r.max_residual = f.relative;
        r.tolerance = 1e-5;
        r.pass = f.relative < 1e-5;
        out.push_back(to_json(r));
        if (points == 3) {
          const double a = flatness_check(V, z, s.h, ctx, s.K, 2e-3, HDerivative::CentralDifference).relative;
          const double b = flatness_check(V, z, s.h, ctx, s.K, 1e-3, HDerivative::CentralDifference).relative;
          NumericReport t;
          t.check = "kz-flatness-step-trend";
          t.parameters = {{"points", points}, {"K", s.K}, {"ratio", a / b}, {"steps", {2e-3, 1e-3}}};
          t.max_residual = std::abs(a / b - 4.0) / 4.0;
          t.tolerance = 0.1;
          t.pass = t.max_residual <= t.tolerance;
          out.push_back(to_json(t));
        }
      }
    }
  }
  if (all || which == "psi") {
    const EllipticContext ctx(cplx(0.05, 1.0));
    const std::vector<cplx> h = {{0.17, 0.03}, {-0.17, -0.03}};
    out.push_back(to_json(check_psi_law(TensorSpace(2, {defining_rep(2), defining_rep(2)}), {0.1, cplx(0.45, 0.1)}, h, ctx)));
    out.push_back(to_json(check_psi_law(TensorSpace(2, {defining_rep(2), defining_rep(2), symmetric_power(2, 2)}),
                                        {0.1, cplx(0.45, 0.1), cplx(-0.3, 0.25)}, h, ctx)));
  }
  if (all || which == "bridge") {
    for (int n : {2, 3}) {
      const auto rd = RootData::build_a_type(n);
      std::vector<std::vector<cplx>> hs;
      std::vector<cplx> us, taus;
      for (int s = 0; s < 10; ++s) {
        std::vector<cplx> h(n);
        cplx mean = 0;
        for (int a = 0; a < n; ++a) mean += h[a] = cplx(0.07 * (s + 1) * (a + 1) - 0.2 * a, 0.03 * ((s * a) % 4) - 0.05);
        for (auto& x : h) x -= mean / double(n);
        hs.push_back(h);
        us.push_back(cplx(0.01 * s, 0.02));
        taus.push_back(cplx(0.05 * s - 0.2, 1.0 + 0.1 * (s % 3)));
      }
      out.push_back(to_json(check_denominator_product(rd, 12, hs, us, taus)));
    }
    const auto rd = RootData::build_a_type(2);
    for (int K : {1, 2})
      for (const auto& lam : rd.level_alcove(K))
        out.push_back(to_json(check_theta_law(rd, lam, K, 8, {{{0.13, 0.02}, {-0.13, -0.02}}, {{0.31, -0.1}, {-0.31, 0.1}}},
                                              cplx(0.05, 1.0))));
  }
  if (out.empty()) fail(ErrorKind::InvalidInput, "unknown elliptic check '" + which + "'");
  return out;
}

int emit_reports(const std::string& suite, const std::vector<json>& reports, const RunConfig& cfg, std::ostream& out) {
  render_reports(suite, reports, cfg.format, out);
  for (const auto& r : reports)
    if (!report_passes(r)) return kVerificationFailed;
  return kOk;
}

std::vector<Partition> lambda_list(const RunConfig& cfg) {
  std::vector<Partition> out;
  if (!cfg.lambdas.empty()) {
    for (const auto& t : cfg.lambdas) out.push_back(parse_partition(t, cfg.n));
    return out;
  }
  // one representative per sl_n weight: last part zero
  for (const auto& p : partitions_up_to(cfg.n, cfg.max_size))
    if (p.back() == 0) out.push_back(p);
  return out;
}

std::vector<int> k_list(const RunConfig& cfg, std::vector<int> fallback) {
  if (!cfg.k) return fallback;
  return {parse_int_k(cfg.k, "verify")};
}

}  // namespace

int cmd_macdonald(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Session session(cfg, err);
  const auto rd = root_data(cfg);
  if (cfg.lambdas.empty()) fail(ErrorKind::InvalidInput, "macdonald needs --lambda");
  std::string mode_name = cfg.mode.empty() ? (cfg.k ? "t=q^k" : "generic") : cfg.mode;
  MacMode mode;
  if (mode_name == "generic") {
    if (cfg.k) fail(ErrorKind::InvalidInput, "--k conflicts with --mode generic");
    mode = MacMode::generic_t();
  } else if (mode_name == "t=q^k" || mode_name == "qk") {
    mode = MacMode::t_eq_qk(parse_int_k(cfg.k, "--mode t=q^k"));
    mode_name = "t=q^k";
  } else {
    fail(ErrorKind::InvalidInput, "--mode must be generic or t=q^k");
  }
  if (cfg.convention != "native" && cfg.convention != "book")
    fail(ErrorKind::InvalidInput, "--convention must be native or book");
  std::vector<Partition> lams;
  for (const auto& t : cfg.lambdas) lams.push_back(parse_partition(t, cfg.n));
  for (const auto& l : lams) check_partition(rd, l);
  const auto items = parallel_map<json>(cfg.jobs, lams.size(), [&](std::size_t i) {
    json key = {{"cmd", "macdonald"}, {"n", cfg.n}, {"lambda", lams[i]}, {"mode", mode_name}, {"convention", cfg.convention}};
    if (!mode.generic) key["k"] = mode.k;
    return session.cached(key, [&] {
      auto P = macdonald_poly(rd, lams[i], mode);
      if (cfg.convention == "book")
        for (auto& [mu, c] : P.coeffs) c = to_book_convention(c);
      json j = macdonald_to_json(P, cfg.n);
      if (cfg.convention == "book") j["convention"] = "book";
      return j;
    });
  });
  render_polys(items, cfg.format, out);
  return kOk;
}

int cmd_jack(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Session session(cfg, err);
  const auto rd = root_data(cfg);
  if (cfg.lambdas.empty()) fail(ErrorKind::InvalidInput, "jack needs --lambda");
  const JacobiK k = parse_k(cfg.k);
  std::vector<Partition> lams;
  for (const auto& t : cfg.lambdas) lams.push_back(parse_partition(t, cfg.n));
  for (const auto& l : lams) check_partition(rd, l);
  const auto items = parallel_map<json>(cfg.jobs, lams.size(), [&](std::size_t i) {
    return session.cached({{"cmd", "jack"}, {"n", cfg.n}, {"lambda", lams[i]}, {"k", k.text()}},
                          [&] { return jacobi_to_json(jacobi_poly(rd, Weight::from_partition(lams[i]), k)); });
  });
  render_polys(items, cfg.format, out);
  return kOk;
}

int cmd_affine(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Session session(cfg, err);
  const auto rd = root_data(cfg);
  if (!cfg.K) fail(ErrorKind::InvalidInput, "affine needs --K");
  if (cfg.lambdas.size() != 1) fail(ErrorKind::InvalidInput, "affine needs exactly one --lambda");
  const int N = cfg.N.value_or(4);
  if (N < 0) fail(ErrorKind::InvalidInput, "--N must be nonnegative");
  const Weight lam = Weight::from_partition(parse_partition(cfg.lambdas[0], cfg.n));
  const JacobiK k = parse_k(cfg.k);
  if (cfg.compare_weyl_kac) {
    if (k.formal || k.value != 1) fail(ErrorKind::InvalidInput, "--compare-weyl-kac needs --k 1");
    const json rep = session.cached({{"cmd", "affine-k1"}, {"n", cfg.n}, {"lambda", weight_to_json(lam)}, {"K", *cfg.K}, {"N", N}},
                                    [&] { return to_json(verify_affine_k1(rd, lam, *cfg.K, N)); });
    return emit_reports("affine-k1", {rep}, cfg, out);
  }
  const json s = session.cached(
      {{"cmd", "affine"}, {"n", cfg.n}, {"lambda", weight_to_json(lam)}, {"K", *cfg.K}, {"N", N}, {"k", k.text()}},
      [&] { return affine_to_json(expand(rd, affine_jacobi(rd, lam, *cfg.K, k, N)), k); });
  render_affine(s, cfg.format, out);
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.suite == "elliptic-all") return emit_reports(cfg.suite, elliptic_reports(cfg, "all"), cfg, out);
  Session session(cfg, err);
  const auto rd = root_data(cfg);
  std::vector<std::pair<json, std::function<json()>>> tasks;
  const auto lams = lambda_list(cfg);
  for (const auto& l : lams) check_partition(rd, l);
  auto add = [&](json key, std::function<json()> f) {
    key["suite"] = cfg.suite;
    key["n"] = cfg.n;
    tasks.emplace_back(std::move(key), std::move(f));
  };
  const std::string& s = cfg.suite;
  if (s == "norm" || s == "special-value") {
    for (int k : k_list(cfg, {2, 3}))
      for (const auto& l : lams)
        add({{"lambda", l}, {"k", k}}, [&rd, l, k, s] {
          return to_json(s == "norm" ? verify_norm(rd, l, k) : verify_special_value(rd, l, k));
        });
  } else if (s == "symmetry" || s == "orthogonality") {
    std::vector<std::pair<Partition, Partition>> pairs;
    if (!cfg.mu.empty()) {
      if (lams.size() != 1) fail(ErrorKind::InvalidInput, "--mu pairs with a single --lambda");
      pairs.emplace_back(lams[0], parse_partition(cfg.mu, cfg.n));
      check_partition(rd, pairs[0].second);
    } else {
      for (std::size_t i = 0; i < lams.size(); ++i)
        for (std::size_t j = i + (s == "orthogonality" ? 1 : 0); j < lams.size(); ++j) pairs.emplace_back(lams[i], lams[j]);
    }
    for (int k : k_list(cfg, s == "symmetry" ? std::vector<int>{2, 3} : std::vector<int>{1, 2, 3}))
      for (const auto& [l, m] : pairs)
        add({{"lambda", l}, {"mu", m}, {"k", k}}, [&rd, l, m, k, s] {
          return to_json(s == "symmetry" ? verify_symmetry(rd, l, m, k) : verify_orthogonality(rd, l, m, k));
        });
  } else if (s == "commutativity") {
    const MacMode mode = cfg.k ? MacMode::t_eq_qk(parse_int_k(cfg.k, "commutativity")) : MacMode::generic_t();
    for (const auto& l : lams)
      add({{"lambda", l}, {"k", cfg.k ? json(mode.k) : json("generic")}},
          [&rd, l, mode] { return to_json(verify_commutativity(rd, l, mode)); });
  } else if (s == "affine-k1") {
    std::vector<int> levels = cfg.K ? std::vector<int>{*cfg.K} : std::vector<int>{1, 2};
    const int N = cfg.N.value_or(8);
    for (int K : levels) {
      std::vector<Weight> ws;
      if (!cfg.lambdas.empty())
        for (const auto& l : lams) ws.push_back(Weight::from_partition(l));
      else
        ws = rd.level_alcove(K);
      for (const auto& w : ws)
        add({{"lambda", weight_to_json(w)}, {"K", K}, {"N", N}}, [&rd, w, K, N] { return to_json(verify_affine_k1(rd, w, K, N)); });
    }
  } else {
    fail(ErrorKind::InvalidInput, "unknown suite '" + s + "'");
  }
  const auto reports = parallel_map<json>(cfg.jobs, tasks.size(), [&](std::size_t i) {
    return session.cached(tasks[i].first, tasks[i].second);
  });
  return emit_reports(cfg.suite, reports, cfg, out);
}

int cmd_elliptic(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.fn.empty()) fail(ErrorKind::InvalidInput, "elliptic needs --fn or --check");
  if (cfg.fn.rfind("check:", 0) == 0) return emit_reports("elliptic", elliptic_reports(cfg, cfg.fn.substr(6)), cfg, out);
  const EllipticContext ctx(parse_complex(cfg.tau));
  auto need = [](const std::string& v, const char* flag) {
    if (v.empty()) fail(ErrorKind::InvalidInput, std::string("this function needs ") + flag);
    return parse_complex(v);
  };
  json j = {{"fn", cfg.fn}, {"tau", complex_json(ctx.tau())}};
  cplx v;
  const std::string& f = cfg.fn;
  if (f == "eta") {
    v = eta(ctx);
  } else if (f == "theta1" || f == "sigma" || f == "wp") {
    const cplx x = need(cfg.x, "--x");
    j["x"] = complex_json(x);
    v = f == "theta1" ? theta1(x, ctx) : f == "sigma" ? sigma(x, ctx) : wp(x, ctx);
  } else if (f == "phi0") {
    const cplx z = need(cfg.zeta, "--zeta");
    j["zeta"] = complex_json(z);
    v = phi0(z, ctx);
  } else if (f == "g" || f == "phi") {
    const cplx x = need(cfg.x, "--x"), z = need(cfg.zeta, "--zeta");
    j["x"] = complex_json(x);
    j["zeta"] = complex_json(z);
    v = f == "g" ? g(x, z, ctx) : phi(x, z, ctx);
    if (f == "g" && std::abs(z.imag()) < ctx.tau().imag()) {
      const cplx s = g_series(x, z, ctx);
      j["series"] = complex_json(s);
      j["consistent"] = std::abs(s - v) <= cfg.tol.value_or(1e-10) * std::max(1.0, std::abs(v));
    }
  } else {
    fail(ErrorKind::InvalidInput, "unknown function '" + f + "'");
  }
  j["value"] = complex_json(v);
  if (cfg.format == "json")
    out << j.dump() << "\n";
  else if (cfg.format == "csv")
    out << "fn,re,im\n" << f << "," << v.real() << "," << v.imag() << "\n";
  else
    out << f << " = " << v.real() << (v.imag() < 0 ? " - " : " + ") << std::abs(v.imag()) << "i\n";
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Macdonald, Jacobi and affine Jacobi polynomials; elliptic KZ checks", "macpoly"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersionTag));

  const std::vector<std::string> formats = {"json", "csv", "pretty"};
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember(formats));
    sub->add_option("--cache-dir", cfg.cache_dir, "Result cache directory (else $MACPOLY_CACHE; none disables caching)");
    sub->add_option("--jobs", cfg.jobs, "Worker threads across independent inputs")->check(CLI::Range(1, 256));
    sub->add_option("--tol", cfg.tol, "Numeric tolerance for elliptic identity checks (default 1e-10)");
    sub->add_flag("--stats", cfg.stats, "Print cache counters to stderr");
  };
  auto algebra = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "n of sl_n (2 to 12)");
    sub->add_option("--lambda", cfg.lambdas, "Partition as a comma list; repeat for several");
    sub->add_option("--k", cfg.k, "Parameter k");
  };

  auto* mac = app.add_subcommand("macdonald", "Macdonald polynomial P_lambda in orbit-sum coordinates");
  common(mac);
  algebra(mac);
  mac->add_option("--mode", cfg.mode, "generic or t=q^k (default: t=q^k when --k is given)");
  mac->add_option("--convention", cfg.convention, "native or book (book P(q,t) is native P at q^(1/2), t^(1/2))");

  auto* jack = app.add_subcommand("jack", "Jacobi (Jack) polynomial J_lambda(k); --k may be 'formal'");
  common(jack);
  algebra(jack);

  auto* aff = app.add_subcommand("affine", "Affine Jacobi polynomial through p^N");
  common(aff);
  algebra(aff);
  aff->add_option("--K", cfg.K, "Level");
  aff->add_option("--N", cfg.N, "Truncation order in p (default 4)");
  aff->add_flag("--compare-weyl-kac", cfg.compare_weyl_kac, "At k = 1 compare with the Weyl-Kac character");

  auto* ver = app.add_subcommand("verify", "Run an identity suite; exit 0 iff everything holds");
  common(ver);
  algebra(ver);
  ver->add_option("suite", cfg.suite, "Suite name")
      ->required()
      ->check(CLI::IsMember({"norm", "symmetry", "special-value", "orthogonality", "commutativity", "affine-k1",
                             "elliptic-all"}));
  ver->add_option("--mu", cfg.mu, "Second partition for symmetry/orthogonality");
  ver->add_option("--K", cfg.K, "Level for affine-k1 (default 1 and 2)");
  ver->add_option("--N", cfg.N, "Truncation for affine-k1 (default 8)");
  ver->add_option("--max-size", cfg.max_size, "Largest |lambda| when --lambda is omitted (default 4)");
  ver->add_option("--fd-step", cfg.fd_step, "Finite-difference step for KZ flatness (default 1e-4)");

  auto* ell = app.add_subcommand("elliptic", "Evaluate an elliptic function or run numeric checks");
  common(ell);
  std::string check;
  ell->add_option("--fn", cfg.fn, "theta1, eta, sigma, wp, g, phi, phi0");
  ell->add_option("--check", check, "identities, r-matrix, flatness, psi, bridge or all");
  ell->add_option("--x", cfg.x, "Complex argument, e.g. 0.3+0.1i");
  ell->add_option("--zeta", cfg.zeta, "Second complex argument");
  ell->add_option("--tau", cfg.tau, "Modulus with Im tau > 0 (default 1i)");
  ell->add_option("--fd-step", cfg.fd_step, "Finite-difference step for KZ flatness (default 1e-4)");

  auto error_json = [&](const char* kind, const std::string& msg) {
    err << json{{"error", kind}, {"message", msg}}.dump() << "\n";
  };
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersionTag << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    error_json("invalid-input", e.what());
    return kInvalidInput;
  }
  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  if (!check.empty()) {
    if (!cfg.fn.empty()) {
      error_json("invalid-input", "--fn and --check are exclusive");
      return kInvalidInput;
    }
    cfg.fn = "check:" + check;
  }

  try {
    if (cfg.command == "macdonald") return cmd_macdonald(cfg, out, err);
    if (cfg.command == "jack") return cmd_jack(cfg, out, err);
    if (cfg.command == "affine") return cmd_affine(cfg, out, err);
    if (cfg.command == "verify") return cmd_verify(cfg, out, err);
    return cmd_elliptic(cfg, out, err);
  } catch (const Error& e) {
    error_json(kind_name(e.kind()), e.what());
    switch (e.kind()) {
      case ErrorKind::InvalidInput:
      case ErrorKind::Domain:
      case ErrorKind::Unsupported:
      case ErrorKind::DegenerateSpectrum:
      case ErrorKind::PoleProximity:
        return kInvalidInput;
      default:
        return kInternal;
    }
  } catch (const std::exception& e) {
    error_json("internal", e.what());
    return kInternal;
  }
}

}  // namespace macpoly::cli
