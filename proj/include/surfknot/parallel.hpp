#pragma once

namespace surfknot {

/// Number of worker threads the library may use. Reads SURFKNOT_THREADS
/// (a positive integer cap); defaults to the hardware concurrency.
unsigned worker_count();

}  // namespace surfknot
