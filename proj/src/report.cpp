#include "ervl/certificate.hpp"

#include <json.hpp>

namespace ervl {

namespace {

nlohmann::ordered_json cert_json(const Certificate& c) {
  nlohmann::ordered_json j;
  j["identity"] = c.identity;
  j["n"] = c.n;
  j["x"] = c.x;
  j["status"] = c.passed ? "pass" : "fail";
  j["witness"] = c.witness;
  return j;
}

}  // namespace

std::string Certificate::to_json(int indent) const { return cert_json(*this).dump(indent); }

std::string certificates_to_json(const std::vector<Certificate>& certs, int indent) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : certs) arr.push_back(cert_json(c));
  return arr.dump(indent);
}

bool all_passed(const std::vector<Certificate>& certs) {
  for (const auto& c : certs)
    if (!c.passed) return false;
  return true;
}

}  // namespace ervl
