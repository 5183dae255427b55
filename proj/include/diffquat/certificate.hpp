#pragma once

#include "json.hpp"

#include "diffquat/engine.hpp"

namespace diffquat {

// Deterministic JSON rendering of a certificate: fixed key order, canonical
// expression strings. parse(emit(cert)) reproduces an equal certificate.
nlohmann::ordered_json emit_certificate_json(const SplitCertificate& cert);
SplitCertificate parse_certificate_json(const nlohmann::ordered_json& doc);
bool certificates_equal(const SplitCertificate& a, const SplitCertificate& b);

} // namespace diffquat
