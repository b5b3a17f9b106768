#pragma once

namespace dines {

/// Keeps freed tensor buffers in the heap instead of returning them to the
/// kernel. Training allocates and frees the same large buffers every epoch;
/// without this, glibc maps and unmaps them and every epoch pays the page
/// faults again. No effect outside glibc. Call once at startup.
void tune_allocator();

}  // namespace dines
