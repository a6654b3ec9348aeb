# tools test package
