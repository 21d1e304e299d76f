// Copyright 2026 The authq Authors
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

#ifndef AUTHQ_ERRORS_H
#define AUTHQ_ERRORS_H

#include <cstddef>
#include <stdexcept>
#include <string>

namespace authq {

/// Error categories double as CLI exit codes.
enum class ErrorCategory : int {
    invalid_argument = 1,
    parse = 2,
    width = 3,
    authenticity = 4,
    budget = 5,
};

class Error : public std::runtime_error {
   public:
    Error(ErrorCategory category, const std::string &what) : std::runtime_error(what), category_(category) {}
    ErrorCategory category() const noexcept { return category_; }

   private:
    ErrorCategory category_;
};

class ParseError : public Error {
   public:
    ParseError(std::size_t line, const std::string &what)
        : Error(ErrorCategory::parse, "line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

   private:
    std::size_t line_;
};

class WidthError : public Error {
   public:
    explicit WidthError(const std::string &what) : Error(ErrorCategory::width, what) {}
};

class AuthenticityError : public Error {
   public:
    explicit AuthenticityError(const std::string &what) : Error(ErrorCategory::authenticity, what) {}
};

class BudgetError : public Error {
   public:
    explicit BudgetError(const std::string &what) : Error(ErrorCategory::budget, what) {}
};

class ArgumentError : public Error {
   public:
    explicit ArgumentError(const std::string &what) : Error(ErrorCategory::invalid_argument, what) {}
};

}  // namespace authq

#endif
