#pragma once

#include <stdexcept>
#include <string>

namespace qfl {

/// Invalid configuration values (wire counts out of range, bad config keys).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A caller broke an interface contract: length mismatch, out-of-range index.
struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Non-finite values where finite arithmetic is required.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries the offending byte offset when known.
struct IngestError : std::runtime_error {
    explicit IngestError(const std::string& what, long long offset = -1)
        : std::runtime_error(offset >= 0
                                 ? what + " (byte offset " + std::to_string(offset) + ")"
                                 : what),
          offset(offset) {}

    long long offset;
};

/// Federated protocol misuse, e.g. aggregating an empty update list.
struct ProtocolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qfl
