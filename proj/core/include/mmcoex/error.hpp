// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace mmcoex {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unreadable or unparseable input data (files, rows, features).
class InputError : public Error {
public:
    using Error::Error;
};

/// A value that parses but violates a model or configuration invariant.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A model evaluated outside its domain while a run is in progress.
class ModelError : public Error {
public:
    using Error::Error;
};

} // namespace mmcoex
