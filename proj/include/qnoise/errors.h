// Copyright 2026 The qnoise Authors
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

#ifndef QNOISE_ERRORS_H
#define QNOISE_ERRORS_H

#include <stdexcept>

namespace qnoise {

/// Invalid or unreadable experiment configuration (CLI exit status 2).
class ConfigError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Input data that does not fit the expected schema or content (exit status 3).
class DataError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

}  // namespace qnoise

#endif  // QNOISE_ERRORS_H
