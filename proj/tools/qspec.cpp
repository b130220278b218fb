#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "qspec/verify.hpp"

using namespace qspec;
using Json = nlohmann::ordered_json;

namespace {

int exitCodeFor(const Error& e) {
  const std::string& c = e.code();
  if (c == "TooLarge" || c == "NeedsBound") return 3;
  if (c == "ParseError" || c == "UnknownSuite") return 2;
  return 1;
}

// the open-set flag: a comma-separated list of principal prime generators
// like "(2),(3)", or "all"
Closed parseOpen(const FiniteRingPtr& R, const std::string& s, const PrimeList& primes) {
  if (s.empty() || s == "all")
    return primes.empty() ? 0 : (Closed(1) << primes.size()) - 1;
  Closed open = 0;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    if (cur.front() != '(' || cur.back() != ')') fail("ParseError", "bad open set token: " + cur);
    Ideal p = Ideal::principal(R, Elem(R->fromInt(std::stoll(cur.substr(1, cur.size() - 2)))));
    for (size_t i = 0; i < primes.size(); ++i)
      if (primes[i] == p) {
        open |= Closed(1) << i;
        return;
      }
    fail("ParseError", "not a prime of this ring: " + cur);
  };
  for (char ch : s) {
    if (ch == ',' ) { flush(); cur.clear(); }
    else if (!isspace((unsigned char)ch)) cur += ch;
  }
  flush();
  return open;
}

int cmdSpec(const std::string& ring, const std::string& scheme, int bound, bool json) {
  Json out;
  std::ostringstream text;
  if (!scheme.empty()) {
    SchemePtr X = parseSchemeDescriptor(scheme);
    SchemeSpecModel m = specOfQcoh(X, bound);
    out["scheme"] = X->key();
    out["points"] = Json::array();
    text << "spectrum of " << X->key() << ": " << m.points.size() << " points\n";
    for (size_t i = 0; i < m.points.size(); ++i) {
      Json p;
      p["key"] = m.points[i].keyStr();
      if (i < m.reps.size()) p["representative"] = m.reps[i].show();
      out["points"].push_back(std::move(p));
      text << "  " << m.points[i].keyStr();
      if (i < m.reps.size()) text << "  [" << m.reps[i].show() << "]";
      text << "\n";
    }
    out["basisOpens"] = m.basisOpens;
    out["sectionRings"] = m.sectionRingKeys;
    for (size_t i = 0; i < m.basisOpens.size(); ++i)
      text << "  O(" << m.basisOpens[i] << ") = " << m.sectionRingKeys[i] << "\n";
  } else {
    RingPtr R = parseRingDescriptor(ring);
    out["ring"] = R->key();
    out["points"] = Json::array();
    if (R->finite()) {
      auto RF = std::static_pointer_cast<const FiniteRing>(R);
      auto pts = specPoints(RF);
      Topology t = buildTopology(RF);
      text << "spectrum of " << R->key() << ": " << pts.size() << " points\n";
      for (const SpecPoint& p : pts) {
        Json e;
        e["prime"] = p.prime.show();
        e["representative"] = p.rep->label();
        out["points"].push_back(std::move(e));
        text << "  " << p.prime.show() << "  [" << p.rep->label() << "]\n";
      }
      out["closedSets"] = t.closedSets;
      text << "  closed sets: " << t.closedSets.size() << "\n";
    } else {
      auto pts = pidSpecPoints(R, bound);
      text << "spectrum of " << R->key() << " (window " << bound << "): " << pts.size()
           << " points\n";
      for (const auto& [p, rep] : pts) {
        Json e;
        e["prime"] = p.show();
        e["representative"] = rep->show();
        out["points"].push_back(std::move(e));
        text << "  " << p.show() << "  [" << rep->show() << "]\n";
      }
    }
  }
  std::cout << (json ? out.dump(2) + "\n" : text.str());
  return 0;
}

int cmdReconstruct(const std::string& scheme, const std::string& ring, int bound, bool json) {
  SchemePtr X = (scheme == "affine" && !ring.empty())
                    ? GluedScheme::affine(parseFiniteRingDescriptor(ring))
                    : parseSchemeDescriptor(scheme);
  ReconReport r = reconstructAndCompare(X, bound);
  if (json) {
    Json out;
    out["scheme"] = X->key();
    out["entries"] = Json::array();
    for (const ReportEntry& e : r.entries) {
      Json je;
      je["name"] = e.name;
      je["ok"] = e.ok;
      je["detail"] = e.detail;
      out["entries"].push_back(std::move(je));
    }
    out["matched"] = r.ok();
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "reconstruction of " << X->key() << ":\n";
    for (const ReportEntry& e : r.entries) {
      std::cout << "  [" << (e.ok ? "ok" : "MISMATCH") << "] " << e.name;
      if (!e.detail.empty()) std::cout << " (" << e.detail << ")";
      std::cout << "\n";
    }
    std::cout << (r.ok() ? "all matched\n" : "MISMATCH\n");
  }
  return r.ok() ? 0 : 1;
}

int cmdVerify(const std::string& suite, const SuiteOptions& opt, bool strict, bool json) {
  VerifyReport r = runSuite(suite, opt);
  if (json) {
    std::cout << reportToJson(r) << "\n";
  } else {
    std::cout << "suite " << r.suite << " (" << r.instance << ")\n";
    for (const CheckResult& c : r.checks) {
      std::cout << "  [" << c.status << "] " << c.name;
      if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
      std::cout << "\n";
    }
    std::cout << r.countStatus("pass") << " pass, " << r.countStatus("fail") << " fail, "
              << r.countStatus("unknown") << " unknown in " << r.seconds << "s\n";
  }
  if (r.anyFail()) return 1;
  if (strict && r.anyUnknown()) return 1;
  return 0;
}

int cmdQuery(const std::string& what, const std::string& ring, const std::string& mdesc,
             const std::string& ndesc, const std::string& open, const std::string& replayFile,
             bool json) {
  auto R = parseFiniteRingDescriptor(ring);
  if (what == "precedes") {
    FinModPtr M = parseModuleDescriptor(R, mdesc);
    FinModPtr N = parseModuleDescriptor(R, ndesc);
    if (!replayFile.empty()) {
      std::ifstream in(replayFile);
      if (!in) fail("ParseError", "cannot read " + replayFile);
      std::stringstream ss;
      ss << in.rdbuf();
      bool ok = replayVerdictJson(ss.str(), M, N);
      std::cout << (ok ? "replay: verified\n" : "replay: FAILED\n");
      return ok ? 0 : 1;
    }
    PrecedesVerdict v = precedes(M, N);
    std::string js = verdictToJson(v, M, N);
    if (json) {
      std::cout << js << "\n";
    } else {
      std::cout << (v.yes() ? "yes" : (v.answer == PrecedesVerdict::Answer::No ? "no" : "unknown"))
                << (v.note.empty() ? "" : " (" + v.note + ")") << "\n"
                << js << "\n";
    }
    return 0;
  }
  if (what == "spectral") {
    FinModPtr M = parseModuleDescriptor(R, mdesc);
    bool s = isSpectral(M);
    std::cout << (s ? "yes" : "no") << "\n";
    return 0;
  }
  if (what == "quothom") {
    PrimeList primes = primeIdeals(R);
    ThickSubcat T = thickOfOpen(R, parseOpen(R, open, primes));
    FinModPtr M = parseModuleDescriptor(R, mdesc);
    FinModPtr N = parseModuleDescriptor(R, ndesc);
    std::cout << quotHomCount(T, M, N) << "\n";
    return 0;
  }
  if (what == "center") {
    PrimeList primes = primeIdeals(R);
    Closed u = parseOpen(R, open, primes);
    CenterResult c = centerOfQuotient(R, u);
    auto S = sectionsRing(R, u, primes);
    if (json) {
      Json out;
      out["open"] = u;
      out["count"] = c.count;
      out["sections"] = S->key();
      out["canonical"] = c.canonicalIso;
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << S->key() << " (" << c.count << " endomorphisms, canonical: "
                << (c.canonicalIso ? "yes" : "no") << ")\n";
    }
    return 0;
  }
  fail("ParseError", "unknown query: " + what);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact spectrum and reconstruction calculator for module and sheaf categories"};
  app.require_subcommand(1);

  std::string ring, scheme, suite, what, m, n, open, replayFile;
  int bound = 3;
  bool json = false, strict = false;
  u64 seed = 0;

  auto* sp = app.add_subcommand("spec", "spectrum of a ring or scheme");
  sp->add_option("--ring", ring);
  sp->add_option("--scheme", scheme);
  sp->add_option("--bound", bound);
  sp->add_flag("--json", json);

  auto* rc = app.add_subcommand("reconstruct", "rebuild a scheme from its sheaf category");
  rc->add_option("--scheme", scheme)->required();
  rc->add_option("--ring", ring);
  rc->add_option("--bound", bound);
  rc->add_flag("--json", json);

  auto* vf = app.add_subcommand("verify", "run a named verification suite");
  vf->add_option("--suite", suite)->required();
  vf->add_option("--ring", ring);
  vf->add_option("--scheme", scheme);
  vf->add_option("--bound", bound);
  vf->add_option("--seed", seed);
  vf->add_flag("--strict", strict);
  vf->add_flag("--json", json);

  auto* qr = app.add_subcommand("query", "one-off question about modules");
  qr->add_option("what", what)->required();
  qr->add_option("--ring", ring)->required();
  qr->add_option("--m", m);
  qr->add_option("--n", n);
  qr->add_option("--open", open);
  qr->add_option("--bound", bound);
  qr->add_option("--replay", replayFile);
  qr->add_flag("--json", json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc_ = app.exit(e);
    return rc_ == 0 ? 0 : 2;
  }

  try {
    if (sp->parsed()) {
      if (ring.empty() && scheme.empty()) fail("ParseError", "spec needs --ring or --scheme");
      return cmdSpec(ring, scheme, bound, json);
    }
    if (rc->parsed()) return cmdReconstruct(scheme, ring, bound, json);
    if (vf->parsed()) {
      SuiteOptions opt;
      opt.ring = ring;
      opt.scheme = scheme;
      opt.bound = bound;
      opt.seed = seed;
      return cmdVerify(suite, opt, strict, json);
    }
    if (qr->parsed()) return cmdQuery(what, ring, m, n, open, replayFile, json);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exitCodeFor(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
