# Test package initializer