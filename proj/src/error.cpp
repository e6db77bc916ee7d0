#include "csl/error.hpp"

namespace csl {

namespace {
const char *prefix(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::invalid_argument: return "invalid argument: ";
    case ErrorKind::budget_exceeded: return "enumeration budget exceeded: ";
    case ErrorKind::ambiguous: return "ambiguous bond: ";
    case ErrorKind::degenerate: return "degenerate code: ";
    case ErrorKind::stuck_chain: return "stuck Markov chain: ";
    case ErrorKind::lattice_mismatch: return "lattice mismatch: ";
    case ErrorKind::io: return "i/o error: ";
    }
    return "";
}
} // namespace

Error::Error(ErrorKind kind, const std::string &message)
    : std::runtime_error(prefix(kind) + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string &message) { throw Error(kind, message); }

} // namespace csl
