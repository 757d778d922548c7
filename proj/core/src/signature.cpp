#include "dbd/signature.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "dbd/error.hpp"
#include "json.hpp"

namespace dbd {

namespace {

using nlohmann::json;

std::size_t positive_field(const json& object, const char* key, std::size_t fallback) {
  if (!object.contains(key)) return fallback;
  const json& value = object.at(key);
  if (!value.is_number_integer() || value.get<long long>() < 1) {
    throw SignatureError(std::string("field '") + key + "' must be a positive integer");
  }
  return value.get<std::size_t>();
}

}  // namespace

Signature::Signature(std::vector<Connective> connectives, ConstructorWeights weights)
    : connectives_(std::move(connectives)), weights_(weights) {
  if (weights_.quantifier == 0 || weights_.membership == 0 || weights_.zero == 0 ||
      weights_.succ == 0) {
    throw SignatureError("constructor weights must be positive");
  }
  std::set<std::string> seen;
  for (const Connective& c : connectives_) {
    if (c.name.empty()) throw SignatureError("connective name must be non-empty");
    bool identifier = std::all_of(c.name.begin(), c.name.end(), [](unsigned char ch) {
      return std::isalnum(ch) || ch == '_' || ch == '-';
    });
    if (!identifier || std::isdigit(static_cast<unsigned char>(c.name.front())) || c.name == "_") {
      throw SignatureError("connective name '" + c.name + "' is not an identifier");
    }
    if (c.name == "in" || c.name == "forall" || c.name == "exists") {
      throw SignatureError("connective name '" + c.name + "' is reserved");
    }
    if (!seen.insert(c.name).second) throw SignatureError("duplicate connective '" + c.name + "'");
    if (c.arity == 0) throw SignatureError("connective '" + c.name + "' must have arity >= 1");
    if (c.weight == 0) throw SignatureError("connective '" + c.name + "' must have weight >= 1");
  }
}

Signature Signature::standard() {
  return Signature({{"and", 2, 1}, {"or", 2, 1}, {"not", 1, 1}});
}

Signature Signature::from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SignatureError(std::string("signature is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("connectives") || !doc.at("connectives").is_array()) {
    throw SignatureError("signature must be an object with a 'connectives' array");
  }
  std::vector<Connective> connectives;
  for (const json& entry : doc.at("connectives")) {
    if (!entry.is_object() || !entry.contains("name") || !entry.at("name").is_string()) {
      throw SignatureError("each connective needs a string 'name'");
    }
    if (!entry.contains("arity")) throw SignatureError("each connective needs an 'arity'");
    connectives.push_back({entry.at("name").get<std::string>(), positive_field(entry, "arity", 1),
                           positive_field(entry, "weight", 1)});
  }
  ConstructorWeights weights{positive_field(doc, "quantifier_weight", 1),
                             positive_field(doc, "membership_weight", 1),
                             positive_field(doc, "zero_weight", 1),
                             positive_field(doc, "succ_weight", 1)};
  return Signature(std::move(connectives), weights);
}

Signature Signature::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SignatureError("cannot open signature file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json(buffer.str());
}

std::string Signature::to_json() const {
  json doc;
  doc["connectives"] = json::array();
  for (const Connective& c : connectives_) {
    doc["connectives"].push_back({{"name", c.name}, {"arity", c.arity}, {"weight", c.weight}});
  }
  doc["quantifier_weight"] = weights_.quantifier;
  doc["membership_weight"] = weights_.membership;
  doc["zero_weight"] = weights_.zero;
  doc["succ_weight"] = weights_.succ;
  return doc.dump();
}

const Connective* Signature::find(std::string_view name) const noexcept {
  auto it = std::find_if(connectives_.begin(), connectives_.end(),
                         [&](const Connective& c) { return c.name == name; });
  return it == connectives_.end() ? nullptr : &*it;
}

std::optional<std::size_t> Signature::index_of(std::string_view name) const noexcept {
  for (std::size_t i = 0; i < connectives_.size(); ++i) {
    if (connectives_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t Signature::max_arity() const noexcept {
  std::size_t best = 0;
  for (const Connective& c : connectives_) best = std::max(best, c.arity);
  return best;
}

std::uint64_t Signature::fingerprint() const {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : to_json()) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace dbd
