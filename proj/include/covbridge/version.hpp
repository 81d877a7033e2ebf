#pragma once

#define COVBRIDGE_VERSION "0.1.0"
