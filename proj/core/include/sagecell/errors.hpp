#pragma once

#include <chrono>
#include <stdexcept>
#include <string>

namespace sagecell {

// Base class for every error this library raises deliberately.
class filter_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An invalid configuration or manifest field. The message names the field.
class config_error : public filter_error {
public:
    using filter_error::filter_error;
};

// A caller violated a documented precondition.
class contract_error : public filter_error {
public:
    using filter_error::filter_error;
};

// Bytes that should decode (zip records, service replies) do not.
class decode_error : public filter_error {
public:
    using filter_error::filter_error;
};

// An archive whose layout does not match what the operation requires.
class structure_error : public filter_error {
public:
    using filter_error::filter_error;
};

// Connection or read failure talking to the compute service.
class transport_error : public filter_error {
public:
    transport_error(const std::string& what, std::chrono::milliseconds elapsed)
        : filter_error(what), elapsed_(elapsed) {}

    std::chrono::milliseconds elapsed() const noexcept { return elapsed_; }

private:
    std::chrono::milliseconds elapsed_;
};

// The compute service answered with an unexpected HTTP status.
class protocol_error : public filter_error {
public:
    protocol_error(const std::string& what, int status)
        : filter_error(what), status_(status) {}

    int status() const noexcept { return status_; }

private:
    int status_;
};

} // namespace sagecell
