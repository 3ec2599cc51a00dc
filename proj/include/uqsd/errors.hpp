// Copyright 2026 The uqsd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace uqsd {

/// Base of every error raised by the library. `kind()` is the stable name
/// used in CLI reports.
class Error : public std::runtime_error {
   public:
    Error(const char *kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    const char *kind() const noexcept { return kind_; }

   private:
    const char *kind_;
};

#define UQSD_DEFINE_ERROR(Name)                                        \
    class Name : public Error {                                        \
       public:                                                         \
        explicit Name(const std::string &what) : Error(#Name, what) {} \
    }

UQSD_DEFINE_ERROR(ShapeMismatch);
UQSD_DEFINE_ERROR(NonHermitianInput);
UQSD_DEFINE_ERROR(InvalidKappa);
UQSD_DEFINE_ERROR(NotNormalized);
UQSD_DEFINE_ERROR(CompletenessViolation);
UQSD_DEFINE_ERROR(ZeroProbabilityOutcome);
UQSD_DEFINE_ERROR(InvalidRange);
UQSD_DEFINE_ERROR(InvalidPrior);
UQSD_DEFINE_ERROR(UnsupportedPrior);
UQSD_DEFINE_ERROR(PreconditionError);

#undef UQSD_DEFINE_ERROR

}  // namespace uqsd
