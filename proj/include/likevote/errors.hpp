/*
 * Copyright 2026 The likevote authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace likevote {

/// Base class for every error raised by this library. Each failure mode has
/// its own type so callers can catch exactly what they care about.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dataset / config validation.
class InvalidConfigError : public Error { public: using Error::Error; };
class SchemaMismatchError : public Error { public: using Error::Error; };

// Feature construction.
class ZeroTotalError : public Error { public: using Error::Error; };
class NoPoliticalLikesError : public Error { public: using Error::Error; };
class UnknownCategoryError : public Error { public: using Error::Error; };

// Solver.
class SingleClassError : public Error { public: using Error::Error; };
class NonFiniteError : public Error { public: using Error::Error; };
class TooFewSamplesError : public Error { public: using Error::Error; };

// Metrics.
class LengthMismatchError : public Error { public: using Error::Error; };
class DegenerateGoldError : public Error { public: using Error::Error; };

// Social propagation.
class UnscorableError : public Error { public: using Error::Error; };
class TooFewPostsError : public Error { public: using Error::Error; };

// Non-response analysis.
class EmptyCategorySetError : public Error { public: using Error::Error; };
class SubNotSubsetError : public Error { public: using Error::Error; };

// Election forecast.
class EmptyUserListError : public Error { public: using Error::Error; };
class ZeroWeightMassError : public Error { public: using Error::Error; };
class DegenerateInputError : public Error { public: using Error::Error; };

}  // namespace likevote
