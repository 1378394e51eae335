// Copyright 2026 The Vizref Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VIZREF_ERRORS_H_
#define VIZREF_ERRORS_H_

#include <stdexcept>
#include <string>

namespace vizref {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A structured-text file does not follow its documented schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Ontology slot count differs from the required eleven.
class CardinalityError : public SchemaError {
 public:
  using SchemaError::SchemaError;
};

// Line-oriented file (embeddings, tables) is malformed.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, int line)
      : Error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, int iteration)
      : Error(what + " at iteration " + std::to_string(iteration)),
        iteration_(iteration) {}
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

// Corpus records violate cross-record consistency.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

// A MODIFYVIS/WINMGMT request reached a step that needs a resolved referent.
class UnresolvedReferenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace vizref

#endif  // VIZREF_ERRORS_H_
