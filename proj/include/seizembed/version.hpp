#pragma once

#define SEIZEMBED_VERSION "0.1.0"

namespace seizembed {
inline const char* version() { return SEIZEMBED_VERSION; }
}
