# Core modules package
