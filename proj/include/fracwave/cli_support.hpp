#pragma once

// Placeholder; filled in with the experiment-runner support layer.
