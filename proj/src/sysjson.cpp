// sysjson.cpp

#include "klq/sysjson.hpp"

namespace klq {

Json system_to_json(const CoxeterSystem& sys) {
  Json j;
  if (sys.type_name == "A" || sys.type_name == "affine-A") {
    j["type"] = sys.type_name;
    j["n"] = sys.type_n;
  } else {
    Json rows = Json::array();
    for (int i = 0; i < sys.rank; ++i) {
      Json row = Json::array();
      for (int k = 0; k < sys.rank; ++k) row.push_back(sys.a(i, k));
      rows.push_back(std::move(row));
    }
    j["cartan"] = std::move(rows);
  }
  Json jj = Json::array();
  for (int s : sys.J) jj.push_back(gen_to_user(sys, s));
  j["J"] = std::move(jj);
  return j;
}

CoxeterSystem system_from_json(const Json& j) {
  if (!j.is_object()) fail(Errc::invalid_input, "system JSON must be an object");
  const bool has_type = j.contains("type");
  const bool has_cartan = j.contains("cartan");
  if (has_type == has_cartan)
    fail(Errc::invalid_input,
         "system JSON needs exactly one of \"type\" and \"cartan\"");
  try {
    // J is given in user names; resolve after the base system exists.
    if (has_type) {
      const std::string type = j.at("type").get<std::string>();
      const int n = j.at("n").get<int>();
      CoxeterSystem base = type == "A"          ? type_a(n)
                           : type == "affine-A" ? affine_a(n)
                                                : (fail(Errc::invalid_input,
                                                        "unknown system type \"" +
                                                            type + "\""),
                                                   CoxeterSystem{});
      std::vector<int> J;
      if (j.contains("J"))
        for (const auto& v : j.at("J"))
          J.push_back(gen_to_internal(base, v.get<long long>()));
      return type == "A" ? type_a(n, J) : affine_a(n, J);
    }
    std::vector<std::vector<std::int64_t>> cartan;
    for (const auto& row : j.at("cartan")) {
      cartan.emplace_back();
      for (const auto& v : row) cartan.back().push_back(v.get<std::int64_t>());
    }
    std::vector<int> J;
    if (j.contains("J"))
      for (const auto& v : j.at("J")) J.push_back(static_cast<int>(v.get<long long>()));
    return build_system(cartan, J);
  } catch (const Json::exception& e) {
    fail(Errc::invalid_input, std::string("bad system JSON: ") + e.what());
  }
}

Word word_from_user(const CoxeterSystem& sys, const std::vector<long long>& names) {
  Word w;
  w.reserve(names.size());
  for (long long v : names)
    w.push_back(static_cast<std::uint8_t>(gen_to_internal(sys, v)));
  return w;
}

std::vector<long long> word_to_user(const CoxeterSystem& sys, const Word& w) {
  std::vector<long long> out;
  out.reserve(w.size());
  for (std::uint8_t s : w) out.push_back(gen_to_user(sys, s));
  return out;
}

}  // namespace klq
