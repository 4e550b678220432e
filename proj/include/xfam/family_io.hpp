#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "xfam/seq_family.hpp"
#include "xfam/set_family.hpp"

namespace xfam {

// Canonical interchange forms (object keys alphabetical, members in the
// family's canonical order, compact spacing):
//   {"n":4,"sets":[[1,2],[2,3,4]]}
//   {"m":3,"n":2,"seqs":[[1,2],[3,1]]}
// serialize() of a parsed canonical document reproduces it byte for byte.

class FamilyParseError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

using AnyFamily = std::variant<SetFamily, SeqFamily>;

inline nlohmann::json to_json(const SetFamily& fam) {
  nlohmann::json sets = nlohmann::json::array();
  for (Mask m : fam.members()) sets.push_back(elements_of(m));
  return nlohmann::json{{"n", fam.ground_size()}, {"sets", std::move(sets)}};
}

inline nlohmann::json to_json(const SeqFamily& fam) {
  nlohmann::json seqs = nlohmann::json::array();
  for (std::uint32_t idx : fam.members()) seqs.push_back(fam.decode(idx));
  return nlohmann::json{{"m", fam.alphabet()}, {"n", fam.length()}, {"seqs", std::move(seqs)}};
}

inline std::string serialize(const SetFamily& fam) { return to_json(fam).dump(); }
inline std::string serialize(const SeqFamily& fam) { return to_json(fam).dump(); }

namespace detail {

inline int json_int(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key))
    throw FamilyParseError("missing key \"" + std::string(key) + "\"");
  const auto& v = doc.at(key);
  if (!v.is_number_integer())
    throw FamilyParseError("key \"" + std::string(key) + "\" must be an integer");
  return v.get<int>();
}

inline std::vector<int> json_int_list(const nlohmann::json& v, const std::string& where) {
  if (!v.is_array()) throw FamilyParseError(where + ": expected an array");
  std::vector<int> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number_integer()) throw FamilyParseError(where + ": entries must be integers");
    out.push_back(e.get<int>());
  }
  return out;
}

inline void reject_unknown_keys(const nlohmann::json& doc,
                                std::initializer_list<const char*> known) {
  for (const auto& [key, value] : doc.items()) {
    bool ok = false;
    for (const char* k : known) ok |= key == k;
    if (!ok) throw FamilyParseError("unknown key \"" + key + "\"");
  }
}

}  // namespace detail

inline SetFamily set_family_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw FamilyParseError("family document must be a JSON object");
  detail::reject_unknown_keys(doc, {"n", "sets"});
  int n = detail::json_int(doc, "n");
  if (n < 1 || n > SetFamily::kMaxGround)
    throw FamilyParseError("n=" + std::to_string(n) + " outside [1, " +
                           std::to_string(SetFamily::kMaxGround) + "]");
  if (!doc.contains("sets")) throw FamilyParseError("missing key \"sets\"");
  if (!doc.at("sets").is_array()) throw FamilyParseError("key \"sets\" must be an array");
  std::vector<Mask> members;
  std::size_t i = 0;
  for (const auto& entry : doc.at("sets")) {
    std::string where = "sets[" + std::to_string(i) + "]";
    std::vector<int> elems = detail::json_int_list(entry, where);
    Mask m;
    try {
      m = mask_from_elements(elems, n);
    } catch (const std::invalid_argument& e) {
      throw FamilyParseError(where + ": " + e.what());
    }
    for (Mask prev : members)
      if (prev == m) throw FamilyParseError(where + ": duplicate set " + mask_to_string(m));
    members.push_back(m);
    ++i;
  }
  return SetFamily(n, std::move(members));
}

inline SeqFamily seq_family_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw FamilyParseError("family document must be a JSON object");
  detail::reject_unknown_keys(doc, {"m", "n", "seqs"});
  int m = detail::json_int(doc, "m");
  int n = detail::json_int(doc, "n");
  SeqFamily probe = [&] {
    try {
      return SeqFamily::empty_family(m, n);
    } catch (const std::invalid_argument& e) {
      throw FamilyParseError(e.what());
    }
  }();
  if (!doc.contains("seqs")) throw FamilyParseError("missing key \"seqs\"");
  if (!doc.at("seqs").is_array()) throw FamilyParseError("key \"seqs\" must be an array");
  std::vector<std::uint32_t> members;
  std::size_t i = 0;
  for (const auto& entry : doc.at("seqs")) {
    std::string where = "seqs[" + std::to_string(i) + "]";
    std::vector<int> seq = detail::json_int_list(entry, where);
    std::uint32_t idx;
    try {
      idx = probe.encode(seq);
    } catch (const std::invalid_argument& e) {
      throw FamilyParseError(where + ": " + e.what());
    }
    for (std::uint32_t prev : members)
      if (prev == idx) throw FamilyParseError(where + ": duplicate sequence");
    members.push_back(idx);
    ++i;
  }
  return SeqFamily(m, n, std::move(members));
}

// A document with an "m" key is a sequence family, otherwise a set family.
inline AnyFamily family_from_json(const nlohmann::json& doc) {
  if (doc.is_object() && doc.contains("m")) return seq_family_from_json(doc);
  return set_family_from_json(doc);
}

inline AnyFamily parse_family(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FamilyParseError(e.what());
  }
  return family_from_json(doc);
}

inline AnyFamily load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FamilyParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_family(buf.str());
  } catch (const FamilyParseError& e) {
    throw FamilyParseError(path + ": " + e.what());
  }
}

}  // namespace xfam
