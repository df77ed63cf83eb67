#ifndef RDH_ERRORS_HPP
#define RDH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rdh {

// Error categories, mapped to CLI exit codes by the frontend:
//   argument -> 2, capacity -> 3, corruption -> 4, io/decode -> 5.
enum class errc {
  argument,       // bad parameter or unusable input dimensions
  io,             // file could not be read or written
  decode,         // malformed image file
  capacity,       // payload does not fit the achievable embedding capacity
  corruption,     // stego data inconsistent: checksum, structure, or range
  serialization,  // auxiliary data exceeds a pinned field width
};

class rdh_error : public std::runtime_error {
public:
  rdh_error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  errc code() const { return code_; }

private:
  errc code_;
};

// Raised when the requested payload exceeds what the optimizer can plan.
// Carries the largest capacity that was reachable so callers can retry.
class capacity_error : public rdh_error {
public:
  capacity_error(const std::string& what, long long max_achievable)
      : rdh_error(errc::capacity, what), max_achievable_(max_achievable) {}

  long long max_achievable() const { return max_achievable_; }

private:
  long long max_achievable_;
};

}  // namespace rdh

#endif  // RDH_ERRORS_HPP
