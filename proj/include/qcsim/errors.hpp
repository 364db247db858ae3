// Copyright 2026 The qcsim Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcsim {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Raised when a requested register would not fit the configured memory budget.
class CapacityError : public Error {
public:
    using Error::Error;
};

class IndexError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class NotUnitaryError : public Error {
public:
    NotUnitaryError(const std::string &what, double deviation) : Error(what), deviation_(deviation) {}

    /// Largest entrywise magnitude of U^dagger U - I.
    double deviation() const noexcept { return deviation_; }

private:
    double deviation_;
};

class DegenerateStateError : public Error {
public:
    using Error::Error;
};

/// Syntax error in a circuit file. `line()` is 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string &message)
        : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Well-formed circuit that references qubits it cannot.
class ValidationError : public Error {
public:
    ValidationError(std::size_t line, const std::string &message)
        : Error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

    /// 0 when the error does not come from a parsed file.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    IoError(const std::string &path, const std::string &message)
        : Error(path + ": " + message), path_(path) {}

    const std::string &path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace qcsim
