# App init file
