#pragma once

#include <functional>
#include <string>

namespace oamgate::io {

// Locale-independent decimal formatting ('.' separator always).
// format_double: shortest round-trip representation.
// format_sig: the given number of significant digits (CSV output uses 10).
std::string format_double(double v);
std::string format_sig(double v, int digits);

// Write-then-rename so readers never observe a partial file.
void atomic_write_file(const std::string& path, const std::string& contents);

// Runs fn(i) for i in [0, n); splits the range over hardware threads.
// The first exception thrown by any chunk is rethrown.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace oamgate::io
