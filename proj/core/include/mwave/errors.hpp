#pragma once

#include <stdexcept>
#include <string>

namespace mwave {

// Process exit codes, one per error family. Documented in `mwave --help`.
enum class Errc : int {
  ok = 0,
  usage = 64,
  parse = 2,
  unknown_key = 3,
  invariant = 4,
  unknown_tissue = 5,
  geometry = 6,
  diverged = 7,
  out_of_record = 8,
  mismatched_acquisition = 9,
  flat_image = 10,
  non_physical = 11,
  io = 12,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }
  int exit_code() const { return static_cast<int>(code_); }

 private:
  Errc code_;
};

struct ParseError : Error {
  ParseError(int line, const std::string& reason)
      : Error(Errc::parse, "parse error at line " + std::to_string(line) + ": " + reason),
        line(line) {}
  int line;
};

struct UnknownKeyError : Error {
  UnknownKeyError(const std::string& section, const std::string& key)
      : Error(Errc::unknown_key, "unknown key '" + key + "' in section [" + section + "]") {}
};

struct InvariantViolation : Error {
  explicit InvariantViolation(const std::string& what) : Error(Errc::invariant, what) {}
};

struct UnknownTissue : Error {
  explicit UnknownTissue(const std::string& name)
      : Error(Errc::unknown_tissue, "unknown tissue '" + name + "'") {}
};

struct GeometryError : Error {
  explicit GeometryError(const std::string& what) : Error(Errc::geometry, what) {}
};

struct Diverged : Error {
  explicit Diverged(const std::string& what) : Error(Errc::diverged, what) {}
};

struct OutOfRecord : Error {
  explicit OutOfRecord(const std::string& what) : Error(Errc::out_of_record, what) {}
};

struct MismatchedAcquisition : Error {
  explicit MismatchedAcquisition(const std::string& what)
      : Error(Errc::mismatched_acquisition, what) {}
};

struct FlatImage : Error {
  explicit FlatImage(const std::string& what) : Error(Errc::flat_image, what) {}
};

struct NonPhysical : Error {
  explicit NonPhysical(const std::string& what) : Error(Errc::non_physical, what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(Errc::io, what) {}
};

}  // namespace mwave
