#pragma once

#include <stdexcept>
#include <string>

namespace qmckay {

// Base class for everything this library throws on purpose. The CLI maps
// subclasses onto exit codes, so new error kinds should subclass Error
// rather than std::runtime_error directly.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define QMCKAY_DEFINE_ERROR(Name)                                            \
    class Name : public Error {                                              \
    public:                                                                   \
        using Error::Error;                                                   \
    }

// exactnum
QMCKAY_DEFINE_ERROR(PoleError);        // uncancelled Gamma pole
QMCKAY_DEFINE_ERROR(NotIntegerShift);  // gamma_ratio arguments do not differ by an integer
QMCKAY_DEFINE_ERROR(OrderMismatch);    // cyclotomic orders incompatible

// lattice
QMCKAY_DEFINE_ERROR(RankMismatch);       // framing-free columns do not determine T uniquely
QMCKAY_DEFINE_ERROR(NoFramingRelation);  // no affine framing relation makes the systems match
QMCKAY_DEFINE_ERROR(NonConstantRatio);   // prefactor ratio varies across the correspondence
QMCKAY_DEFINE_ERROR(NonIntegerScalar);   // prefactor ratio constant but not a positive integer
QMCKAY_DEFINE_ERROR(WrongRank);          // secondary fan needs exactly two charge rows

// series
QMCKAY_DEFINE_ERROR(UnknownVariable);
QMCKAY_DEFINE_ERROR(RegionMismatch);

// potential
QMCKAY_DEFINE_ERROR(UnboundedRegion);     // constraints do not bound the index set
QMCKAY_DEFINE_ERROR(NonGenericFraming);   // a Gamma pole survived at this framing
QMCKAY_DEFINE_ERROR(NotBijective);        // index correspondence fails
QMCKAY_DEFINE_ERROR(AssertionFailure);    // spec-data invariant breached during evaluation

// io
QMCKAY_DEFINE_ERROR(SyntaxError);
QMCKAY_DEFINE_ERROR(SemanticError);

#undef QMCKAY_DEFINE_ERROR

} // namespace qmckay
