#pragma once

namespace telefid {

/// Worker count: TELEFID_THREADS if set, otherwise the OpenMP default.
/// Throws ParameterError if TELEFID_THREADS is not a positive integer.
int thread_count();

/// Applies thread_count() to the OpenMP runtime.
void configure_threads();

}  // namespace telefid
