/**
 * Copyright 2026 The earate Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef EARATE_ERROR_HPP
#define EARATE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace earate {

// Mirrors the codes exposed through the C API (earate.h).
enum class ErrorCode : int {
    ok = 0,
    domain = 1,
    singular_parameter = 2,
    iteration_limit = 3,
    resource = 4,
    consistency = 5,
    io = 6,
    invalid_argument = 7,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorCode::domain, what) {}
};

class SingularParameterError : public Error {
public:
    explicit SingularParameterError(const std::string& what)
        : Error(ErrorCode::singular_parameter, what) {}
};

// Series failed to converge inside the term cap; carries the state at the point of giving up.
class IterationLimitError : public Error {
public:
    IterationLimitError(const std::string& what, double partial_sum, double last_term)
        : Error(ErrorCode::iteration_limit, what), partial_sum_(partial_sum), last_term_(last_term) {}
    double partial_sum() const noexcept { return partial_sum_; }
    double last_term() const noexcept { return last_term_; }

private:
    double partial_sum_;
    double last_term_;
};

class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& what) : Error(ErrorCode::resource, what) {}
};

// Internal invariant broken (non-Hermitian block, eigenvalue far below zero, ...).
class ConsistencyError : public Error {
public:
    explicit ConsistencyError(const std::string& what) : Error(ErrorCode::consistency, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorCode::io, what) {}
};

}  // namespace earate

#endif
