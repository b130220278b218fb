#include "qspec/descriptor.hpp"

#include <json.hpp>
#include <sstream>

namespace qspec {

namespace {

using Json = nlohmann::ordered_json;

std::vector<std::string> splitOn(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string stripSpace(const std::string& s) {
  std::string out;
  for (char ch : s)
    if (!isspace((unsigned char)ch)) out += ch;
  return out;
}

i64 parseInt(const std::string& s) {
  try {
    size_t used = 0;
    i64 v = std::stoll(s, &used);
    if (used != s.size()) fail("ParseError", "bad integer: " + s);
    return v;
  } catch (const Error&) {
    throw;
  } catch (...) {
    fail("ParseError", "bad integer: " + s);
  }
}

}  // namespace

RingPtr parseRingDescriptor(const std::string& raw) {
  std::string s = stripSpace(raw);
  auto parts = splitOn(s, ':');
  if (parts[0] == "zmod" && parts.size() == 2) return FiniteRing::zmod(parseInt(parts[1]));
  if (parts[0] == "gf" && parts.size() == 2) return FiniteRing::gf(parseInt(parts[1]));
  if (parts[0] == "poly" && parts.size() >= 3) {
    if (parts[1] != "gf") fail("ParseError", "polynomial rings take a gf coefficient field");
    std::string var = parts.size() >= 4 ? parts[3] : "t";
    return PolyRing::make(FiniteRing::gf(parseInt(parts[2])), var);
  }
  fail("ParseError", "unknown ring descriptor: " + raw);
}

FiniteRingPtr parseFiniteRingDescriptor(const std::string& s) {
  RingPtr R = parseRingDescriptor(s);
  if (!R->finite()) fail("ParseError", "a finite ring is required here: " + s);
  return std::static_pointer_cast<const FiniteRing>(R);
}

SchemePtr parseSchemeDescriptor(const std::string& raw) {
  std::string s = stripSpace(raw);
  if (s == "empty") return GluedScheme::emptyScheme();
  if (s.rfind("p1:", 0) == 0) return GluedScheme::p1(parseInt(s.substr(3)));
  if (s.rfind("affine:", 0) == 0)
    return GluedScheme::affine(parseFiniteRingDescriptor(s.substr(7)));
  if (s.rfind("disj:", 0) == 0) {
    auto parts = splitOn(s.substr(5), ';');
    if (parts.size() != 2) fail("ParseError", "disj takes two scheme descriptors");
    return GluedScheme::disjointUnion(parseSchemeDescriptor(parts[0]),
                                      parseSchemeDescriptor(parts[1]));
  }
  fail("ParseError", "unknown scheme descriptor: " + raw);
}

FinModPtr parseModuleDescriptor(const FiniteRingPtr& R, const std::string& raw) {
  std::string s = stripSpace(raw);
  if (s.empty()) fail("ParseError", "empty module descriptor");
  FinModPtr acc;
  for (const std::string& term : splitOn(s, '+')) {
    FinModPtr M;
    if (term == "R") {
      M = FinMod::freeModule(R, 1);
    } else if (term == "0") {
      M = FinMod::zeroModule(R);
    } else if (term.rfind("free:", 0) == 0) {
      M = FinMod::freeModule(R, (int)parseInt(term.substr(5)));
    } else if (term.rfind("Z/", 0) == 0) {
      M = FinMod::cyclic(R, Ideal::principal(R, Elem(R->fromInt(parseInt(term.substr(2))))));
    } else if (term.rfind("R/(", 0) == 0 && term.back() == ')') {
      std::vector<Elem> gens;
      for (const std::string& g : splitOn(term.substr(3, term.size() - 4), ','))
        gens.emplace_back(R->fromInt(parseInt(g)));
      M = FinMod::cyclic(R, Ideal::span(R, gens));
    } else {
      fail("ParseError", "unknown module term: " + term);
    }
    acc = acc ? directSum(acc, M) : M;
  }
  return acc;
}

namespace {

Json matToJson(const Mat& m) {
  Json a = Json::array();
  for (const Vec& r : m) a.push_back(r);
  return a;
}

Mat matFromJson(const Json& a) {
  Mat m;
  for (const auto& r : a) m.push_back(r.get<Vec>());
  return m;
}

}  // namespace

std::string verdictToJson(const PrecedesVerdict& v, const FinModPtr& M, const FinModPtr& N) {
  Json j;
  j["answer"] = v.answer == PrecedesVerdict::Answer::Yes
                    ? "yes"
                    : (v.answer == PrecedesVerdict::Answer::No ? "no" : "unknown");
  j["m"] = M->key();
  j["n"] = N->key();
  j["note"] = v.note;
  if (v.witness) {
    Json w;
    w["tuple"] = matToJson(v.witness->tuple);
    w["jointAnn"] = matToJson(v.witness->jointAnn.hnf());
    w["copies"] = v.witness->copies;
    w["epi"] = matToJson(v.witness->epi.T);
    j["witness"] = std::move(w);
  }
  if (v.certificate) {
    Json c;
    c["killer"] = v.certificate->killer;
    c["moved"] = v.certificate->moved;
    j["certificate"] = std::move(c);
  }
  return j.dump(2);
}

bool replayVerdictJson(const std::string& json, const FinModPtr& M, const FinModPtr& N) {
  Json j;
  try {
    j = Json::parse(json);
  } catch (...) {
    fail("ParseError", "verdict is not valid JSON");
  }
  if (j.value("m", "") != M->key() || j.value("n", "") != N->key()) return false;
  PrecedesVerdict v;
  std::string ans = j.value("answer", "unknown");
  v.answer = ans == "yes" ? PrecedesVerdict::Answer::Yes
                          : (ans == "no" ? PrecedesVerdict::Answer::No
                                         : PrecedesVerdict::Answer::Unknown);
  const auto& R = M->ring();
  if (j.contains("witness")) {
    const Json& w = j["witness"];
    std::vector<Elem> annGens;
    for (const auto& r : w["jointAnn"]) annGens.emplace_back(r.get<Vec>());
    Ideal ann = Ideal::span(R, annGens);
    int copies = w["copies"].get<int>();
    FinModPtr src = directPower(FinMod::cyclic(R, ann), copies);
    PrecedesWitness pw{matFromJson(w["tuple"]), ann, copies,
                       ModHom{src, M, matFromJson(w["epi"])}};
    v.witness = std::move(pw);
  }
  if (j.contains("certificate")) {
    const Json& c = j["certificate"];
    v.certificate = PrecedesCertificate{c["killer"].get<Vec>(), c["moved"].get<Vec>()};
  }
  return replayPrecedes(v, M, N);
}

}  // namespace qspec
