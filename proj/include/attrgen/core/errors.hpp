// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace attrgen {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand dimensions do not line up.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Lookup of an absent key or an empty selection.
class MissError : public Error {
public:
    using Error::Error;
};

/// Second insert under a key that must be unique.
class ConflictError : public Error {
public:
    using Error::Error;
};

/// Argument outside the operation's domain.
class DomainError : public Error {
public:
    using Error::Error;
};

class BoundsError : public Error {
public:
    using Error::Error;
};

class DescriptorNotFound : public Error {
public:
    explicit DescriptorNotFound(std::string descriptor)
        : Error("attribute descriptor not found in prompt: '" + descriptor + "'"),
          descriptor_(std::move(descriptor)) {}
    const std::string& descriptor() const noexcept { return descriptor_; }

private:
    std::string descriptor_;
};

/// A gated self-attention layer had no matching source record.
class InjectionMiss : public MissError {
public:
    using MissError::MissError;
};

class MissingConditioning : public Error {
public:
    using Error::Error;
};

class CategoryError : public Error {
public:
    using Error::Error;
};

class VocabularyError : public Error {
public:
    using Error::Error;
};

class DanglingRefError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Failure inside a backend step, tagged with where it happened.
class BackendError : public Error {
public:
    BackendError(int timestep, std::string layer_id, const std::string& what)
        : Error("timestep " + std::to_string(timestep) + ", layer " + layer_id + ": " + what),
          timestep_(timestep),
          layer_id_(std::move(layer_id)) {}
    int timestep() const noexcept { return timestep_; }
    const std::string& layer_id() const noexcept { return layer_id_; }

private:
    int timestep_;
    std::string layer_id_;
};

/// Carries every violation found, not just the first.
class ConfigError : public Error {
public:
    explicit ConfigError(std::vector<std::string> violations)
        : Error(join(violations)), violations_(std::move(violations)) {}
    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out = "invalid config";
        for (const auto& s : v) out += "\n  - " + s;
        return out;
    }
    std::vector<std::string> violations_;
};

}  // namespace attrgen
