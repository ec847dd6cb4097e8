// Copyright 2026 The wgqed Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace wgqed {

// Base of every error raised by the library. The C API maps each subclass
// onto a distinct status code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid user input: bad parameters, dimension mismatch, unknown names.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Malformed configuration text.
class ParseError : public ValidationError {
public:
    ParseError(int line, int column, const std::string& what)
        : ValidationError("line " + std::to_string(line) + ", column " +
                          std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

// P_B never turns over inside the simulated window.
class NoPeakError : public Error {
public:
    using Error::Error;
};

// Step-size underflow or a physicality breach during time integration.
class IntegrationError : public Error {
public:
    IntegrationError(double time_ns, const std::string& what)
        : Error(what + " (t = " + std::to_string(time_ns) + " ns)"), time_ns_(time_ns) {}

    double time_ns() const noexcept { return time_ns_; }

private:
    double time_ns_;
};

// Quality factor of a lossless system is unbounded.
class ZeroDenominatorError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace wgqed
