#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "geode/guesser.hpp"
#include "geode/recurrence.hpp"
#include "geode/verifier.hpp"

// JSON forms of recurrences, systems and reports. Big integers are always
// decimal strings. Key order is fixed, so dump(parse(dump(x))) == dump(x).
namespace geode::io {

using Json = nlohmann::ordered_json;

Json to_json(const IndexPolynomial& p);
IndexPolynomial poly_from_json(const Json& j, std::size_t num_vars);

// kind "pure" (axis) or "diagonal".
Json to_json(const PureRecurrence& rec);
PureRecurrence recurrence_from_json(const Json& j);

Json to_json(const RecurrenceSystem& sys);
// The verified flag is not restored here; see load_system.
RecurrenceSystem system_from_json(const Json& j);

// A diagonal recurrence together with G(1,...,1) and G(2,...,2).
struct DiagonalRecurrence {
  PureRecurrence recurrence;
  BigInt g1;
  BigInt g2;
};
Json to_json(const DiagonalRecurrence& d);
DiagonalRecurrence diagonal_from_json(const Json& j);

// 64-bit FNV-1a of the compact dump with the "verification" key removed.
std::string content_digest(const Json& doc);
// Adds or replaces {"verification": {window, status, digest}}.
void stamp(Json& doc, int window, bool passed);
// Window of a passing stamp whose digest matches the content, else nullopt.
std::optional<int> valid_stamp(const Json& doc);

Json to_json(const VerificationReport& rep);
Json to_json(const GuessReport& rep);
Json to_json(const AnsatzSpec& spec);

// Missing or unreadable files raise FileError; malformed JSON raises IntegrityError.
Json read_file(const std::filesystem::path& path);
// Writes through a temporary file and a rename.
void write_file(const std::filesystem::path& path, const Json& doc);
std::string dump(const Json& doc);

// A system file whose stamp is valid comes back marked verified.
RecurrenceSystem load_system(const std::filesystem::path& path);

}  // namespace geode::io
