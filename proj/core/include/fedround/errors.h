/**
 * Copyright 2026 The fedround Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FEDROUND_ERRORS_H_
#define FEDROUND_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fedround {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed on-disk data (IDX files, JSON documents).
class FormatError : public Error {
 public:
  using Error::Error;
};

// A caller-supplied argument violates a documented precondition.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Matrix or weight-vector dimensions do not line up.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A collection of values that must agree with each other does not.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::size_t epoch)
      : Error(what), epoch_(epoch) {}
  std::size_t epoch() const { return epoch_; }

 private:
  std::size_t epoch_;
};

// The metric has no value on this input (e.g. AUROC with one class).
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

class EvaluationError : public Error {
 public:
  using Error::Error;
};

// Network failure talking to the round server.
class TransportError : public Error {
 public:
  using Error::Error;
};

class WatchdogTimeout : public Error {
 public:
  using Error::Error;
};

}  // namespace fedround

#endif  // FEDROUND_ERRORS_H_
