#pragma once

// JSON encodings of library results and the report envelope.

#include <openssl/evp.h>

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "../classify.hpp"
#include "../reflect.hpp"
#include "../roots.hpp"
#include "../synthesis.hpp"

namespace kmarith::cli {

using json = nlohmann::json;

enum ExitCode { Success = 0, Invalid = 1, Inconclusive = 2 };

inline json to_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

inline json to_json(const Rat& x) {
  if (x.get_den() == 1) return to_json(x.get_num());
  return x.get_str();
}

inline json to_json(const std::vector<Int>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline json to_json(const std::vector<Rat>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline json to_json(const std::vector<IntVector>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

inline json to_json(const IntMatrix& m) { return to_json(m.to_rows()); }

inline json to_json(const SignatureTriple& s) { return {{"plus", s.plus}, {"minus", s.minus}, {"zero", s.zero}}; }

inline json to_json(const BudgetSpent& s) {
  return {{"iterations", s.iterations}, {"candidates", s.candidates}, {"max_height_reached", s.max_height_reached}};
}

inline json to_json(const SearchBudget& b) {
  return {{"max_norm", b.max_norm}, {"max_iter", b.max_iter}, {"max_height", b.max_height}};
}

inline json to_json(const FundamentalPolyhedron& p) {
  return {{"facets", to_json(p.facets)},
          {"coxeter_gram", to_json(p.coxeter_gram)},
          {"volume_status", volume_status_name(p.volume_status)},
          {"extreme_rays", to_json(p.extreme_rays)},
          {"stabilizer_facets", p.stabilizer_facets}};
}

inline json to_json(const Error& e) {
  json j{{"code", errc_name(e.code())}, {"message", e.what()}};
  if (e.location()) j["location"] = {e.location()->first, e.location()->second};
  return j;
}

inline json roots_json(const std::vector<RootElement>& roots, const RootSystem& rs) {
  json a = json::array();
  for (const auto& r : roots)
    a.push_back({{"coords", to_json(r.coords)}, {"height", to_json(r.height())}, {"norm", to_json(rs.pairing(r.coords, r.coords))}});
  return a;
}

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

}  // namespace kmarith::cli
