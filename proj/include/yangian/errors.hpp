#pragma once

#include <stdexcept>
#include <string>

namespace yangian {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidRank : public Error { public: using Error::Error; };
class IndexOutOfRange : public Error { public: using Error::Error; };
class WrongKind : public Error { public: using Error::Error; };
class Unsupported : public Error { public: using Error::Error; };
class TruncationExceeded : public Error { public: using Error::Error; };
// Raised when an invariant the construction guarantees turns out violated
// (e.g. a non-integral exchange exponent between current terms).
class InternalInconsistency : public Error { public: using Error::Error; };

}  // namespace yangian
