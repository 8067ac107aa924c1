#pragma once

#include <chrono>
#include <string_view>

#include "sagecell/model.hpp"

namespace sagecell {

// Executes one code fragment against a SageMathCell-compatible service.
//
// Issues exactly one POST to {server_url}/service with the form body
//   code=<percent-encoded UTF-8>&accepted_tos=true
// and decodes the JSON reply via parse_service_response. No retries: a
// verification tool should surface flakiness, not mask it.
//
// Raises transport_error (connect/read failure, carries elapsed time),
// protocol_error (HTTP status != 200, carries the status), or
// decode_error (malformed reply body).
ExecutionResult execute_code(std::string_view code, std::string_view server_url,
                             std::chrono::milliseconds timeout);

// Decodes a service reply body: a JSON object with a required boolean
// "success" and an optional string "stdout" (anything else is ignored for
// forward compatibility). The raw bytes are kept in raw_response.
// Raises decode_error naming the offending field.
ExecutionResult parse_service_response(std::string_view body);

} // namespace sagecell
