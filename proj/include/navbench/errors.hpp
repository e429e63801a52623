#pragma once

#include <stdexcept>
#include <string>

namespace navbench {

/// Malformed input file; message carries the offending line or byte offset.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Domain-rule violation (invalid scene, episode validity, bad query).
class DomainError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Policy-side failure while running an episode; the episode is aborted and
/// reported separately, never counted in SR.
class PolicyError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Wire-protocol violation (bad payload, unknown action, transport failure).
class ProtocolError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace navbench
