#pragma once

#define TLDRKIT_VERSION_MAJOR 0
#define TLDRKIT_VERSION_MINOR 1
#define TLDRKIT_VERSION_PATCH 0
#define TLDRKIT_VERSION "0.1.0"
